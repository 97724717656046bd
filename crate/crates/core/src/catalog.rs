//! Ready-made instances: the 4-ary rotation group over angle turns, the
//! 4-ary general linear group of 2x2 complex matrices, and the ternary
//! general linear supergroup of (1|1) supermatrices over a Grassmann algebra.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::blockshift::{self, BlockShiftMatrix};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, SuperMatrix};
use crate::scalar::{ComplexRational, GrassmannElement, Scalar, Turn};
use crate::shiftdeform::{self, ShiftTuple};
use crate::verify::{random_invertible, random_scalar, NaryStructure, Rng64, ENTRY_BOUND};

/// Rotation angle as an exact fraction of a full turn.
pub type So2Element = Turn;

/// `Q(alpha, beta, gamma)`, the 4-ary rotation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct So2Poly {
    #[serde(with = "turn_text")]
    pub alpha: Turn,
    #[serde(with = "turn_text")]
    pub beta: Turn,
    #[serde(with = "turn_text")]
    pub gamma: Turn,
}

mod turn_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::Turn;

    pub fn serialize<S: Serializer>(t: &Turn, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&t.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Turn, D::Error> {
        let text = String::deserialize(d)?;
        Turn::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl So2Poly {
    pub fn new(alpha: Turn, beta: Turn, gamma: Turn) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn from_ratios(v: [(i64, i64); 3]) -> Self {
        let [a, b, c] = v.map(|(p, q)| Turn::ratio(p, q));
        Self::new(a, b, c)
    }

    pub fn zero() -> Self {
        Self::new(Turn::zero(), Turn::zero(), Turn::zero())
    }

    pub fn to_tuple(&self) -> ShiftTuple<Turn> {
        ShiftTuple::new(vec![self.alpha.clone(), self.beta.clone(), self.gamma.clone()])
            .expect("three components")
    }

    pub fn from_tuple(t: &ShiftTuple<Turn>) -> Result<Self> {
        match t.components() {
            [a, b, c] => Ok(Self::new(a.clone(), b.clone(), c.clone())),
            other => Err(Error::Dimension(format!(
                "rotation triples have 3 angles, got {}",
                other.len()
            ))),
        }
    }

    /// The 6x6 float matrix with rotation blocks `B(alpha), B(beta), B(gamma)`.
    pub fn to_float_blockshift(&self) -> BlockShiftMatrix<f64> {
        let blocks = [&self.alpha, &self.beta, &self.gamma]
            .map(rotation_block)
            .to_vec();
        BlockShiftMatrix::from_blocks(4, blocks).expect("2x2 blocks")
    }

    pub fn random(rng: &mut Rng64) -> Self {
        let mut t = || Turn::ratio(rng.gen_range(0..ENTRY_BOUND), rng.gen_range(1..=ENTRY_BOUND));
        Self::new(t(), t(), t())
    }
}

/// `B(alpha) = [[cos, -sin], [sin, cos]]` as floats.
pub fn rotation_block(t: &Turn) -> Matrix<f64> {
    let (s, c) = t.radians().sin_cos();
    Matrix::new(2, 2, vec![c, -s, s, c]).expect("2x2")
}

/// Binary rotation product: angles add.
pub fn so2_binary_product(a: &Turn, b: &Turn) -> Turn {
    a.clone() + b.clone()
}

/// `(a1+b2+c3+a4, b1+c2+a3+b4, c1+a2+b3+c4)` modulo one turn.
pub fn so2_nary_product(a: &So2Poly, b: &So2Poly, c: &So2Poly, d: &So2Poly) -> So2Poly {
    let sum = |x: [&Turn; 4]| x.into_iter().cloned().fold(Turn::zero(), |acc, t| acc + t);
    So2Poly::new(
        sum([&a.alpha, &b.beta, &c.gamma, &d.alpha]),
        sum([&a.beta, &b.gamma, &c.alpha, &d.beta]),
        sum([&a.gamma, &b.alpha, &c.beta, &d.gamma]),
    )
}

/// `Q(-beta-gamma, -alpha-gamma, -alpha-beta)`.
pub fn so2_quer(a: &So2Poly) -> So2Poly {
    let (x, y, z) = (a.alpha.clone(), a.beta.clone(), a.gamma.clone());
    So2Poly::new(
        -(y.clone() + z.clone()),
        -(x.clone() + z),
        -(x + y),
    )
}

/// Whether `alpha + beta + gamma = 0` modulo one turn.
pub fn so2_is_identity(e: &So2Poly) -> bool {
    (e.alpha.clone() + e.beta.clone() + e.gamma.clone()).is_zero()
}

/// The 4-ary rotation group over exact turns.
#[derive(Clone, Copy, Debug, Default)]
pub struct So2Structure;

impl NaryStructure for So2Structure {
    type Elem = So2Poly;
    fn arity(&self) -> usize {
        4
    }
    fn domain(&self) -> String {
        "4-ary rotations over turns".into()
    }
    fn product(&self, args: &[So2Poly]) -> Result<So2Poly> {
        match args {
            [a, b, c, d] => Ok(so2_nary_product(a, b, c, d)),
            _ => Err(Error::Count {
                what: "arguments",
                expected: 4,
                got: args.len(),
            }),
        }
    }
    fn sample(&self, rng: &mut Rng64) -> Option<So2Poly> {
        Some(So2Poly::random(rng))
    }
    fn describe(&self, a: &So2Poly) -> serde_json::Value {
        serde_json::to_value(a).unwrap_or(serde_json::Value::Null)
    }
    fn perturb(&self, a: &So2Poly) -> Option<So2Poly> {
        let mut b = a.clone();
        b.alpha = b.alpha + Turn::ratio(1, 7);
        Some(b)
    }
}

/// The binary rotation group over exact turns.
#[derive(Clone, Copy, Debug, Default)]
pub struct So2BinaryStructure;

impl NaryStructure for So2BinaryStructure {
    type Elem = Turn;
    fn arity(&self) -> usize {
        2
    }
    fn domain(&self) -> String {
        "binary rotations over turns".into()
    }
    fn product(&self, args: &[Turn]) -> Result<Turn> {
        match args {
            [a, b] => Ok(so2_binary_product(a, b)),
            _ => Err(Error::Count {
                what: "arguments",
                expected: 2,
                got: args.len(),
            }),
        }
    }
    fn sample(&self, rng: &mut Rng64) -> Option<Turn> {
        Some(Turn::ratio(rng.gen_range(0..ENTRY_BOUND), rng.gen_range(1..=ENTRY_BOUND)))
    }
}

/// `nu_s` over the rotation angles; agrees with [`so2_nary_product`].
pub fn so2_via_shift(args: &[So2Poly; 4]) -> Result<So2Poly> {
    let tuples: Vec<_> = args.iter().map(So2Poly::to_tuple).collect();
    So2Poly::from_tuple(&shiftdeform::nu_s(4, &tuples)?)
}

/// One 2x2 block `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Debug)]
pub struct Gl2Params {
    pub a: ComplexRational,
    pub b: ComplexRational,
    pub c: ComplexRational,
    pub d: ComplexRational,
}

impl Gl2Params {
    pub fn new(a: ComplexRational, b: ComplexRational, c: ComplexRational, d: ComplexRational) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_i64(v: [i64; 4]) -> Self {
        let [a, b, c, d] = v.map(ComplexRational::from);
        Self::new(a, b, c, d)
    }

    pub fn from_matrix(m: &Matrix<ComplexRational>) -> Result<Self> {
        if m.shape() != (2, 2) {
            return Err(Error::Dimension(format!(
                "expected a 2x2 block, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self::new(
            m.get(0, 0).clone(),
            m.get(0, 1).clone(),
            m.get(1, 0).clone(),
            m.get(1, 1).clone(),
        ))
    }

    pub fn matrix(&self) -> Matrix<ComplexRational> {
        Matrix::new(2, 2, vec![self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()])
            .expect("2x2")
    }

    /// `Delta = a d - b c`.
    pub fn det(&self) -> ComplexRational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn random(rng: &mut Rng64) -> Self {
        Self::from_matrix(&random_invertible(rng, 2, true)).expect("2x2")
    }
}

/// The 6x6 polyadization of three invertible 2x2 blocks.
pub fn gl2_instance(params: &[Gl2Params; 3]) -> Result<BlockShiftMatrix<ComplexRational>> {
    for (i, p) in params.iter().enumerate() {
        if p.det().is_zero() {
            return Err(Error::NotInvertible(format!(
                "block {} has vanishing determinant",
                i + 1
            )));
        }
    }
    blockshift::polyadize(4, params.iter().map(Gl2Params::matrix).collect())
}

/// Entrywise closed form of the querelement blocks.
///
/// Block `i` is `B_{i-1}^-1 B_{i+1}^-1` (indices mod 3), written out as a
/// product of adjugates over the matching determinants.
pub fn gl2_closed_form_quer(params: &[Gl2Params; 3]) -> Result<[Matrix<ComplexRational>; 3]> {
    let block = |x: &Gl2Params, y: &Gl2Params| -> Result<Matrix<ComplexRational>> {
        // x^-1 y^-1 = adj(x) adj(y) / (det x det y)
        let scale = ComplexRational::from(1)
            .checked_div(&(x.det() * y.det()))
            .map_err(|_| Error::NotInvertible("vanishing determinant".into()))?;
        let e = |v: ComplexRational| v * scale.clone();
        Matrix::new(
            2,
            2,
            vec![
                e(&x.b * &y.c + &x.d * &y.d),
                e(-(&x.b * &y.a) - &x.d * &y.b),
                e(-(&x.a * &y.c) - &x.c * &y.d),
                e(&x.a * &y.a + &x.c * &y.b),
            ],
        )
    };
    let [p1, p2, p3] = params;
    Ok([block(p3, p2)?, block(p1, p3)?, block(p2, p1)?])
}

/// `chi(Q) = Delta_1 Delta_2 Delta_3`.
pub fn gl2_character(params: &[Gl2Params; 3]) -> ComplexRational {
    params.iter().fold(ComplexRational::from(1), |acc, p| acc * p.det())
}

/// Left sides minus right sides of the four entrywise equations of
/// `B_1 B_2 B_3 = I`, in the order (1,1) = 1, (2,2) = 1, (1,2) = 0, (2,1) = 0.
/// All four vanish exactly on the idempotents.
pub fn gl2_idempotent_residuals(params: &[Gl2Params; 3]) -> [ComplexRational; 4] {
    let [p1, p2, p3] = params;
    let (a1, b1, c1, d1) = (&p1.a, &p1.b, &p1.c, &p1.d);
    let (a2, b2, c2, d2) = (&p2.a, &p2.b, &p2.c, &p2.d);
    let (a3, b3, c3, d3) = (&p3.a, &p3.b, &p3.c, &p3.d);
    let m = |x: &ComplexRational, y: &ComplexRational, z: &ComplexRational| &(x * y) * z;
    let one = ComplexRational::from(1);
    [
        m(a1, a2, a3) + m(a1, b2, c3) + m(a3, b1, c2) + m(b1, c3, d2) - one.clone(),
        m(a2, b3, c1) + m(b2, c1, d3) + m(b3, c2, d1) + m(d1, d2, d3) - one,
        m(a1, a2, b3) + m(a1, b2, d3) + m(b1, b3, c2) + m(b1, d2, d3),
        m(a2, a3, c1) + m(a3, c2, d1) + m(b2, c1, c3) + m(c3, d1, d2),
    ]
}

/// One standard (1|1) supermatrix `[[a, alpha], [beta, b]]`: `a`, `b`
/// even, `alpha`, `beta` odd.
#[derive(Clone, PartialEq, Debug)]
pub struct Gl11Params {
    pub a: GrassmannElement,
    pub b: GrassmannElement,
    pub alpha: GrassmannElement,
    pub beta: GrassmannElement,
}

impl Gl11Params {
    pub fn new(
        a: GrassmannElement,
        b: GrassmannElement,
        alpha: GrassmannElement,
        beta: GrassmannElement,
    ) -> Result<Self> {
        let p = Self { a, b, alpha, beta };
        p.supermatrix()?;
        Ok(p)
    }

    pub fn from_matrix(m: &Matrix<GrassmannElement>) -> Result<Self> {
        if m.shape() != (2, 2) {
            return Err(Error::Dimension(format!(
                "expected a 2x2 supermatrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Self::new(
            m.get(0, 0).clone(),
            m.get(1, 1).clone(),
            m.get(0, 1).clone(),
            m.get(1, 0).clone(),
        )
    }

    pub fn matrix(&self) -> Matrix<GrassmannElement> {
        Matrix::new(
            2,
            2,
            vec![self.a.clone(), self.alpha.clone(), self.beta.clone(), self.b.clone()],
        )
        .expect("2x2")
    }

    /// Checks generator counts and the standard parity grading.
    pub fn supermatrix(&self) -> Result<SuperMatrix> {
        let n = self.a.generators();
        if [&self.b, &self.alpha, &self.beta].iter().any(|x| x.generators() != n) {
            return Err(Error::GeneratorMismatch {
                left: n,
                right: [&self.b, &self.alpha, &self.beta]
                    .iter()
                    .map(|x| x.generators())
                    .find(|&g| g != n)
                    .unwrap_or(n),
            });
        }
        let sm = SuperMatrix::new(1, 1, self.matrix())?;
        if !sm.is_standard() {
            return Err(Error::Parity(
                "diagonal entries must be even and off-diagonal entries odd".into(),
            ));
        }
        Ok(sm)
    }

    /// Random standard supermatrix with nonzero bodies on the diagonal.
    pub fn random(rng: &mut Rng64, generators: u8) -> Self {
        let a = random_grassmann(rng, generators, true, true);
        let b = random_grassmann(rng, generators, true, true);
        let alpha = random_grassmann(rng, generators, false, false);
        let beta = random_grassmann(rng, generators, false, false);
        Self::new(a, b, alpha, beta).expect("sampled with the standard grading")
    }
}

/// Random homogeneous Grassmann element with small rational coefficients.
/// Even elements get a nonzero body when `unit` is set.
pub fn random_grassmann(rng: &mut Rng64, generators: u8, even: bool, unit: bool) -> GrassmannElement {
    let mut x = GrassmannElement::zero_in(generators);
    for mask in 0u32..(1 << generators) {
        if (mask.count_ones() % 2 == 0) != even || rng.gen_bool(0.5) {
            continue;
        }
        let indices: Vec<u8> = (0..generators).filter(|k| mask & (1 << k) != 0).map(|k| k + 1).collect();
        let complex = rng.gen_bool(0.3);
        let coeff = random_scalar(rng, complex);
        let term = GrassmannElement::monomial(generators, &indices, coeff).expect("valid indices");
        x = x.try_add(&term).expect("same generator count");
    }
    if unit && x.body().is_zero() {
        let body = loop {
            let c = random_scalar(rng, false);
            if !c.is_zero() {
                break c;
            }
        };
        x = x
            .try_add(&GrassmannElement::constant(generators, body))
            .expect("same generator count");
    }
    x
}

/// The 4x4 polyadization of two standard (1|1) supermatrices.
pub fn gl11_instance(params: &[Gl11Params; 2]) -> Result<BlockShiftMatrix<GrassmannElement>> {
    for (i, p) in params.iter().enumerate() {
        p.supermatrix()?.inverse().map_err(|_| {
            Error::NotInvertible(format!("supermatrix {} has a non-invertible body", i + 1))
        })?;
    }
    blockshift::polyadize(3, params.iter().map(Gl11Params::matrix).collect())
}

/// The eight component relations of the ternary product, evaluated term by
/// term in the displayed left-to-right order. Returns the predicted
/// parameters of both result blocks.
pub fn gl11_component_equations(x: &[Gl11Params; 2], y: &[Gl11Params; 2], z: &[Gl11Params; 2]) -> [Gl11Params; 2] {
    let m = |p: &GrassmannElement, q: &GrassmannElement, r: &GrassmannElement| {
        p.clone() * q.clone() * r.clone()
    };
    let block = |i: usize, j: usize| {
        // result block i uses x_i, y_j, z_i with j the other index
        let (p, q, r) = (&x[i], &y[j], &z[i]);
        let a = m(&p.alpha, &q.beta, &r.a) + m(&p.a, &q.alpha, &r.beta) + m(&p.alpha, &q.b, &r.beta) + m(&p.a, &q.a, &r.a);
        let b = m(&p.beta, &q.a, &r.alpha) + m(&p.beta, &q.alpha, &r.b) + m(&p.b, &q.beta, &r.alpha) + m(&p.b, &q.b, &r.b);
        let alpha = m(&p.alpha, &q.beta, &r.alpha) + m(&p.a, &q.a, &r.alpha) + m(&p.a, &q.alpha, &r.b) + m(&p.alpha, &q.b, &r.b);
        let beta = m(&p.beta, &q.alpha, &r.beta) + m(&p.beta, &q.a, &r.a) + m(&p.b, &q.beta, &r.a) + m(&p.b, &q.b, &r.beta);
        Gl11Params { a, b, alpha, beta }
    };
    [block(0, 1), block(1, 0)]
}

/// Querelement blocks `(B_2^-1, B_1^-1)`.
pub fn gl11_quer(params: &[Gl11Params; 2]) -> Result<[Matrix<GrassmannElement>; 2]> {
    Ok([params[1].matrix().inverse()?, params[0].matrix().inverse()?])
}

/// Ternary supermatrix structure with `generators` Grassmann generators.
#[derive(Clone, Copy, Debug)]
pub struct Gl11Structure {
    pub generators: u8,
}

impl NaryStructure for Gl11Structure {
    type Elem = BlockShiftMatrix<GrassmannElement>;
    fn arity(&self) -> usize {
        3
    }
    fn domain(&self) -> String {
        format!("ternary (1|1) supermatrices over grassmann:{}", self.generators)
    }
    fn product(&self, args: &[Self::Elem]) -> Result<Self::Elem> {
        blockshift::nary_product(args)
    }
    fn sample(&self, rng: &mut Rng64) -> Option<Self::Elem> {
        let p = [Gl11Params::random(rng, self.generators), Gl11Params::random(rng, self.generators)];
        gl11_instance(&p).ok()
    }
    fn describe(&self, a: &Self::Elem) -> serde_json::Value {
        serde_json::to_value(crate::io::BlockShiftJson::from_blockshift(a)).unwrap_or(serde_json::Value::Null)
    }
    fn perturb(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let mut blocks = a.blocks().to_vec();
        let one = GrassmannElement::constant(self.generators, ComplexRational::from(1));
        let v = blocks[0].get(0, 0).clone() + one;
        blocks[0].set(0, 0, v);
        BlockShiftMatrix::from_blocks(3, blocks).ok()
    }
}

/// GL(2) 4-ary group with random invertible complex blocks.
#[derive(Clone, Copy, Debug, Default)]
pub struct Gl2Structure;

impl NaryStructure for Gl2Structure {
    type Elem = BlockShiftMatrix<ComplexRational>;
    fn arity(&self) -> usize {
        4
    }
    fn domain(&self) -> String {
        "4-ary GL(2) over complex rationals".into()
    }
    fn product(&self, args: &[Self::Elem]) -> Result<Self::Elem> {
        blockshift::nary_product(args)
    }
    fn sample(&self, rng: &mut Rng64) -> Option<Self::Elem> {
        let p = [Gl2Params::random(rng), Gl2Params::random(rng), Gl2Params::random(rng)];
        gl2_instance(&p).ok()
    }
    fn describe(&self, a: &Self::Elem) -> serde_json::Value {
        serde_json::to_value(crate::io::BlockShiftJson::from_blockshift(a)).unwrap_or(serde_json::Value::Null)
    }
    fn perturb(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let mut blocks = a.blocks().to_vec();
        let v = blocks[0].get(0, 0).clone() + ComplexRational::from(1);
        blocks[0].set(0, 0, v);
        BlockShiftMatrix::from_blocks(4, blocks).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::trial_rng;

    #[test]
    fn so2_examples() {
        let a = So2Poly::from_ratios([(1, 10), (2, 10), (3, 10)]);
        let z = So2Poly::zero();
        assert_eq!(so2_nary_product(&a, &z, &z, &z), a);
        assert_eq!(
            so2_nary_product(&a, &a, &a, &a),
            So2Poly::from_ratios([(7, 10), (8, 10), (9, 10)])
        );
        assert_eq!(so2_quer(&z), z);
        assert_eq!(so2_quer(&a), So2Poly::from_ratios([(5, 10), (6, 10), (7, 10)]));
        let q = so2_quer(&a);
        assert_eq!(so2_nary_product(&a, &a, &a, &q), a);
        assert!(so2_is_identity(&So2Poly::from_ratios([(2, 10), (3, 10), (5, 10)])));
        assert!(so2_is_identity(&z));
        assert!(!so2_is_identity(&So2Poly::from_ratios([(1, 2), (1, 2), (1, 2)])));
        let e = So2Poly::from_ratios([(2, 10), (3, 10), (5, 10)]);
        assert_eq!(so2_quer(&e), e);
    }

    #[test]
    fn so2_noncommutative() {
        let a = So2Poly::from_ratios([(1, 10), (2, 10), (3, 10)]);
        let b = So2Poly::from_ratios([(1, 5), (0, 1), (0, 1)]);
        let z = So2Poly::zero();
        assert_ne!(so2_nary_product(&a, &b, &z, &z), so2_nary_product(&b, &a, &z, &z));
    }

    #[test]
    fn so2_three_ways_agree() {
        let mut rng = trial_rng(11, 0);
        for _ in 0..20 {
            let args = [0; 4].map(|_| So2Poly::random(&mut rng));
            let exact = so2_nary_product(&args[0], &args[1], &args[2], &args[3]);
            assert_eq!(so2_via_shift(&args).unwrap(), exact);
            let floats: Vec<_> = args.iter().map(So2Poly::to_float_blockshift).collect();
            let got = blockshift::nary_product(&floats).unwrap().to_dense();
            let want = exact.to_float_blockshift().to_dense();
            for (x, y) in got.entries().iter().zip(want.entries()) {
                assert!((x - y).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn gl2_closed_forms() {
        let p = [
            Gl2Params::from_i64([1, 2, 3, 5]),
            Gl2Params::from_i64([2, 1, 7, 3]),
            Gl2Params::from_i64([4, -1, 2, 1]),
        ];
        let q = gl2_instance(&p).unwrap();
        let quer = q.querelement().unwrap();
        assert_eq!(quer.blocks(), &gl2_closed_form_quer(&p).unwrap()[..]);
        let dets: Vec<_> = p.iter().map(Gl2Params::det).collect();
        assert_eq!(gl2_character(&p), dets[0].clone() * dets[1].clone() * dets[2].clone());
        assert_eq!(q.polyadized_character(Matrix::determinant).unwrap(), gl2_character(&p));
        let id = [0; 3].map(|_| Gl2Params::from_i64([1, 0, 0, 1]));
        assert_eq!(gl2_instance(&id).unwrap(), blockshift::nary_identity(4, 2).unwrap());
        assert!(gl2_instance(&[Gl2Params::from_i64([1, 2, 2, 4]), p[1].clone(), p[2].clone()]).is_err());
    }

    #[test]
    fn gl2_idempotent_equations() {
        let p1 = Gl2Params::from_i64([1, 2, 3, 5]);
        let p2 = Gl2Params::from_i64([2, 1, 7, 3]);
        let q = blockshift::make_idempotent(4, vec![p1.matrix(), p2.matrix()]).unwrap();
        let p3 = Gl2Params::from_matrix(&q.blocks()[2]).unwrap();
        for r in gl2_idempotent_residuals(&[p1.clone(), p2.clone(), p3]) {
            assert!(r.is_zero());
        }
        let not = gl2_idempotent_residuals(&[p1, p2.clone(), p2]);
        assert!(not.iter().any(|r| !r.is_zero()));
    }

    fn g(t: &str) -> GrassmannElement {
        GrassmannElement::parse(t, 4).unwrap()
    }

    #[test]
    fn gl11_equations_and_quer() {
        let mut rng = trial_rng(5, 0);
        for _ in 0..5 {
            let [x, y, z] = [0; 3].map(|_| [Gl11Params::random(&mut rng, 4), Gl11Params::random(&mut rng, 4)]);
            let prod = blockshift::nary_product(&[
                gl11_instance(&x).unwrap(),
                gl11_instance(&y).unwrap(),
                gl11_instance(&z).unwrap(),
            ])
            .unwrap();
            let eqs = gl11_component_equations(&x, &y, &z);
            assert_eq!(prod.blocks()[0], eqs[0].matrix());
            assert_eq!(prod.blocks()[1], eqs[1].matrix());
            let q = gl11_instance(&x).unwrap();
            assert_eq!(q.querelement().unwrap().blocks(), &gl11_quer(&x).unwrap()[..]);
        }
    }

    #[test]
    fn gl11_validation() {
        assert!(Gl11Params::new(g("2"), g("3"), g("t1"), g("t2")).is_ok());
        assert!(Gl11Params::new(g("t1"), g("3"), g("2"), g("t2")).is_err());
        let p = Gl11Params::new(g("2"), g("3"), g("t1"), g("t2")).unwrap();
        let no_body = Gl11Params::new(g("t1*t2"), g("3"), g("t1"), g("t2")).unwrap();
        assert!(gl11_instance(&[p.clone(), no_body]).is_err());
        let b = p.matrix();
        let idem = blockshift::polyadize(3, vec![b.clone(), b.inverse().unwrap()]).unwrap();
        assert!(idem.is_nary_idempotent());
        let numeric = Gl11Params::new(g("2"), g("3"), g("0"), g("0")).unwrap();
        let q = gl11_instance(&[numeric.clone(), numeric]).unwrap();
        assert!(q.blocks()[0].get(0, 1).is_zero());
    }
}
