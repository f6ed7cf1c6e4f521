//! Exact verification of the matrix identities satisfied by `c`, `d`, the
//! elements `b_i`, `x_i` and the conjugators `X`, `Y`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use serde::Serialize;

use crate::group::{self, GroupOps};
use crate::laurent::LaurentPoly;
use crate::mat3::Mat3;
use crate::word::Word;

use super::{
    enumerate_subgroup, x_conjugator, x_image_of_b0, x_image_of_d_inv, y_conjugator_cleared,
    EnumerateError, MatrixGroup, Model, ModelError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    /// The identity being checked, written out.
    pub anchor: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    /// Builds a result from an optional failure witness.
    pub fn from_outcome(
        id: impl Into<String>,
        anchor: impl Into<String>,
        outcome: Outcome,
    ) -> Self {
        let (status, witness) = match outcome {
            Ok(None) => (CheckStatus::Pass, None),
            Ok(Some(w)) => (CheckStatus::Fail, Some(w)),
            Err(e) => (CheckStatus::Fail, Some(format!("error: {e}"))),
        };
        Self {
            id: id.into(),
            anchor: anchor.into(),
            status,
            witness,
        }
    }
}

/// `Ok(None)` passes, `Ok(Some(witness))` fails, errors fail with their message.
pub type Outcome = Result<Option<String>, Box<dyn std::error::Error + Send + Sync>>;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }
}

/// Runs every check against the standard generators.
pub fn verify_identity_suite(max_index: usize) -> Result<SuiteReport, ModelError> {
    verify_identity_suite_with(&Model::standard(), max_index)
}

/// Runs every check against `model`. Indices range over `|i| <= max_index`;
/// the finite-subgroup checks cover `<b_0, ..., b_{k-1}>` for
/// `k <= min(4, max_index)`.
pub fn verify_identity_suite_with(
    model: &Model,
    max_index: usize,
) -> Result<SuiteReport, ModelError> {
    if max_index < 2 {
        return Err(ModelError::MaxIndexTooSmall(max_index));
    }
    let m = max_index as i64;
    let mut cache = BCache::new(model);
    let mut report = SuiteReport::default();
    let mut push = |id: &str, anchor: &str, outcome: Outcome| {
        report
            .checks
            .push(CheckResult::from_outcome(id, anchor, outcome));
    };

    push("det.c-d", "det(c) = t = det(d)", check_det(model));
    push(
        "conj.x-b0",
        "X b_0 X^-1 = [[0,0,1],[1,0,1],[0,1,1]]",
        check_x_b0(&mut cache),
    );
    push(
        "conj.x-dinv",
        "X d^-1 X^-1 = [[1,0,0],[1,1+t^-1,1],[1,t^-1,0]]",
        check_x_dinv(model),
    );
    push(
        "conj.y-b0",
        "Y b_0 Y^-1 = [d^-1, b_0]",
        check_y_b0(model, &mut cache),
    );
    push("conj.y-d", "Y d Y^-1 = d", check_y_d(model));
    push(
        "rho.powers",
        "c^k = rho_k(c), d^k = rho_k(d)",
        check_rho_powers(model, m),
    );

    push("nc.order-4", "b_i^4 = 1", check_b_order(&mut cache, m));
    push(
        "nc.b0-commutator",
        "[b_0, b_i] = b_i^2, i != 0",
        check_b0_comm(&mut cache, m),
    );
    push(
        "nc.commutator",
        "[b_i, b_j] = b_i^2 b_{j-i}^2 b_j^2, i < j, i != 0 != j",
        check_b_comm(&mut cache, m),
    );
    push(
        "nc.square-symmetry",
        "b_i^2 = b_{-i}^2, i > 0",
        check_square_symmetry(&mut cache, m),
    );
    push(
        "nc.squares-central-nonneg",
        "[b_i^2, b_j] = 1 = [b_i, b_j^2], 0 <= i, j",
        check_squares_central_nonneg(&mut cache, m),
    );
    push(
        "nc.b1-commutator",
        "[b_1, b_j] = b_1^2 b_{j-1}^2 b_j^2, j > 1",
        check_b1_comm(&mut cache, m),
    );
    push(
        "nc.c-squares-pos",
        "(b_1^-1 b_j)^2 = b_{j-1}^2, j > 1",
        check_c_squares_pos(&mut cache, m),
    );
    push(
        "nc.c-squares-neg",
        "(b_1^-1 b_i)^2 = b_{1-i}^2, i < 0",
        check_c_squares_neg(&mut cache, m),
    );
    push(
        "nc.b1inv-commutator",
        "[b_i, b_1^-1] = b_{1-i}^2 b_{-i}^2 b_1^2, i < 0",
        check_b1inv_comm(&mut cache, m),
    );
    push(
        "nc.squares-central-neg",
        "[b_i, b_j^2] = 1, i < 0 <= j",
        check_squares_central_neg(&mut cache, m),
    );
    push(
        "nc.d-action",
        "d^-1 b_0 d = b_0 b_1, d^-1 b_-1 d = b_1^-1, d^-1 b_i d = b_1^-1 b_{i+1} otherwise",
        check_d_action(model, &mut cache, m),
    );

    push(
        "x.order-4",
        "x_i^4 = 1, x_0 = b_0, x_{i+1} = [d^-1, x_i]",
        check_x_order(model, max_index),
    );
    push(
        "x.square-commutes-d",
        "[x_i^2, d^-1] = 1",
        check_x_square_comm(model, max_index),
    );

    for k in 1..=max_index.min(4) {
        push(
            &format!("finite.b-subgroup-n{k}"),
            "<b_0..b_{k-1}> has order 4^k, central E_{2^k} = <b_i^2> with quotient E_{2^k}, derived subgroup <b_i^2 : 1 <= i < k>",
            check_b_subgroup(&mut cache, k),
        );
    }

    report.sort();
    Ok(report)
}

struct BEntry {
    b: Mat3,
    sq: Mat3,
    inv: Mat3,
}

struct BCache<'a> {
    model: &'a Model,
    map: HashMap<i64, std::rc::Rc<BEntry>>,
}

impl<'a> BCache<'a> {
    fn new(model: &'a Model) -> Self {
        Self {
            model,
            map: HashMap::new(),
        }
    }

    fn get(&mut self, i: i64) -> Result<std::rc::Rc<BEntry>, ModelError> {
        if let Some(e) = self.map.get(&i) {
            return Ok(e.clone());
        }
        let b = self.model.b_matrix(i)?;
        let e = std::rc::Rc::new(BEntry {
            sq: b.mul(&b),
            inv: b.inverse()?,
            b,
        });
        self.map.insert(i, e.clone());
        Ok(e)
    }

    fn b(&mut self, i: i64) -> Result<Mat3, ModelError> {
        Ok(self.get(i)?.b.clone())
    }

    fn sq(&mut self, i: i64) -> Result<Mat3, ModelError> {
        Ok(self.get(i)?.sq.clone())
    }

    fn comm(&mut self, i: i64, j: i64) -> Result<Mat3, ModelError> {
        let a = self.get(i)?;
        let b = self.get(j)?;
        Ok(a.inv.mul(&b.inv).mul(&a.b).mul(&b.b))
    }
}

fn mismatch(what: String) -> Outcome {
    Ok(Some(what))
}

fn check_det(model: &Model) -> Outcome {
    let t = LaurentPoly::monomial(1);
    let (dc, dd) = (model.c().det(), model.d().det());
    if dc != t || dd != t {
        return mismatch(format!("det(c) = {dc}, det(d) = {dd}"));
    }
    Ok(None)
}

fn check_x_b0(cache: &mut BCache) -> Outcome {
    let x = x_conjugator();
    let lhs = x.mul(&cache.b(0)?);
    let rhs = x_image_of_b0().mul(&x);
    if lhs != rhs {
        return mismatch(format!("X b_0 = {lhs} but R X = {rhs}"));
    }
    Ok(None)
}

fn check_x_dinv(model: &Model) -> Outcome {
    let x = x_conjugator();
    let lhs = x.mul(&model.d().inverse()?);
    let rhs = x_image_of_d_inv().mul(&x);
    if lhs != rhs {
        return mismatch(format!("X d^-1 = {lhs} but R X = {rhs}"));
    }
    Ok(None)
}

fn check_y_b0(model: &Model, cache: &mut BCache) -> Outcome {
    let y = y_conjugator_cleared();
    let target = Mat3::commutator(&model.d().inverse()?, &cache.b(0)?)?;
    let lhs = y.mul(&cache.b(0)?);
    let rhs = target.mul(&y);
    if lhs != rhs {
        return mismatch(format!("Yc b_0 = {lhs} but [d^-1, b_0] Yc = {rhs}"));
    }
    Ok(None)
}

fn check_y_d(model: &Model) -> Outcome {
    let y = y_conjugator_cleared();
    let lhs = y.mul(model.d());
    let rhs = model.d().mul(&y);
    if lhs != rhs {
        return mismatch(format!("Yc d = {lhs} but d Yc = {rhs}"));
    }
    Ok(None)
}

fn check_rho_powers(model: &Model, m: i64) -> Outcome {
    for k in (-m..=m).filter(|&k| k != 0) {
        let kb = BigInt::from(k);
        if model.c().pow(k)? != model.c().rho(&kb)? {
            return mismatch(format!("c^{k} != rho_{k}(c)"));
        }
        if model.d().pow(k)? != model.d().rho(&kb)? {
            return mismatch(format!("d^{k} != rho_{k}(d)"));
        }
    }
    Ok(None)
}

fn check_b_order(cache: &mut BCache, m: i64) -> Outcome {
    for i in -m..=m {
        let s = cache.sq(i)?;
        if !s.mul(&s).is_identity() {
            return mismatch(format!("b_{i}^4 != 1"));
        }
    }
    Ok(None)
}

fn check_b0_comm(cache: &mut BCache, m: i64) -> Outcome {
    for i in (-m..=m).filter(|&i| i != 0) {
        if cache.comm(0, i)? != cache.sq(i)? {
            return mismatch(format!("[b_0, b_{i}] != b_{i}^2"));
        }
    }
    Ok(None)
}

fn check_b_comm(cache: &mut BCache, m: i64) -> Outcome {
    for i in (-m..=m).filter(|&i| i != 0) {
        for j in (i + 1..=m).filter(|&j| j != 0) {
            let rhs = cache.sq(i)?.mul(&cache.sq(j - i)?).mul(&cache.sq(j)?);
            if cache.comm(i, j)? != rhs {
                return mismatch(format!("[b_{i}, b_{j}] != b_{i}^2 b_{}^2 b_{j}^2", j - i));
            }
        }
    }
    Ok(None)
}

fn check_square_symmetry(cache: &mut BCache, m: i64) -> Outcome {
    for i in 1..=m {
        if cache.sq(i)? != cache.sq(-i)? {
            return mismatch(format!("b_{i}^2 != b_-{i}^2"));
        }
    }
    Ok(None)
}

fn commutes(a: &Mat3, b: &Mat3) -> bool {
    a.mul(b) == b.mul(a)
}

fn check_squares_central_nonneg(cache: &mut BCache, m: i64) -> Outcome {
    for i in 0..=m {
        for j in 0..=m {
            if !commutes(&cache.sq(i)?, &cache.b(j)?) {
                return mismatch(format!("[b_{i}^2, b_{j}] != 1"));
            }
        }
    }
    Ok(None)
}

fn check_b1_comm(cache: &mut BCache, m: i64) -> Outcome {
    for j in 2..=m {
        let rhs = cache.sq(1)?.mul(&cache.sq(j - 1)?).mul(&cache.sq(j)?);
        if cache.comm(1, j)? != rhs {
            return mismatch(format!("[b_1, b_{j}] != b_1^2 b_{}^2 b_{j}^2", j - 1));
        }
    }
    Ok(None)
}

fn c_square(cache: &mut BCache, i: i64) -> Result<Mat3, ModelError> {
    let c = cache.get(1)?.inv.mul(&cache.b(i)?);
    Ok(c.mul(&c))
}

fn check_c_squares_pos(cache: &mut BCache, m: i64) -> Outcome {
    for j in 2..=m {
        if c_square(cache, j)? != cache.sq(j - 1)? {
            return mismatch(format!("(b_1^-1 b_{j})^2 != b_{}^2", j - 1));
        }
    }
    Ok(None)
}

fn check_c_squares_neg(cache: &mut BCache, m: i64) -> Outcome {
    for i in -m..0 {
        if c_square(cache, i)? != cache.sq(1 - i)? {
            return mismatch(format!("(b_1^-1 b_{i})^2 != b_{}^2", 1 - i));
        }
    }
    Ok(None)
}

fn check_b1inv_comm(cache: &mut BCache, m: i64) -> Outcome {
    for i in -m..0 {
        let b1inv = cache.get(1)?.inv.clone();
        let lhs = Mat3::commutator(&cache.b(i)?, &b1inv)?;
        let rhs = cache.sq(1 - i)?.mul(&cache.sq(-i)?).mul(&cache.sq(1)?);
        if lhs != rhs {
            return mismatch(format!("[b_{i}, b_1^-1] != b_{}^2 b_{}^2 b_1^2", 1 - i, -i));
        }
    }
    Ok(None)
}

fn check_squares_central_neg(cache: &mut BCache, m: i64) -> Outcome {
    for i in -m..0 {
        for j in 0..=m {
            if !commutes(&cache.b(i)?, &cache.sq(j)?) {
                return mismatch(format!("[b_{i}, b_{j}^2] != 1"));
            }
        }
    }
    Ok(None)
}

fn check_d_action(model: &Model, cache: &mut BCache, m: i64) -> Outcome {
    let d = model.d();
    let d_inv = d.inverse()?;
    for i in -m..=m {
        let lhs = d_inv.mul(&cache.b(i)?).mul(d);
        let rhs = match i {
            0 => cache.b(0)?.mul(&cache.b(1)?),
            -1 => cache.get(1)?.inv.clone(),
            _ => cache.get(1)?.inv.mul(&cache.b(i + 1)?),
        };
        if lhs != rhs {
            return mismatch(format!("d^-1 b_{i} d has the wrong value"));
        }
    }
    Ok(None)
}

fn check_x_order(model: &Model, max_index: usize) -> Outcome {
    for i in 0..=max_index {
        if !model.x_matrix(i)?.pow(4)?.is_identity() {
            return mismatch(format!("x_{i}^4 != 1"));
        }
    }
    Ok(None)
}

fn check_x_square_comm(model: &Model, max_index: usize) -> Outcome {
    let d_inv = model.d().inverse()?;
    for i in 0..=max_index {
        let x = model.x_matrix(i)?;
        if !commutes(&x.mul(&x), &d_inv) {
            return mismatch(format!("[x_{i}^2, d^-1] != 1"));
        }
    }
    Ok(None)
}

const SUBGROUP_CAP: usize = 1 << 12;

fn check_b_subgroup(cache: &mut BCache, k: usize) -> Outcome {
    let gens = (0..k as i64)
        .map(|i| Ok((Word::b(i), cache.b(i)?)))
        .collect::<Result<Vec<_>, ModelError>>()?;
    let table = match enumerate_subgroup(&gens, 1 << (2 * k)) {
        Ok(t) => t,
        Err(EnumerateError::Group(_)) => return mismatch(format!("order exceeds 4^{k}")),
        Err(e) => return Err(e.into()),
    };
    let g = MatrixGroup;
    if table.order() != 1 << (2 * k) {
        return mismatch(format!("order {} != 4^{k}", table.order()));
    }
    let whole = table.as_subgroup();
    if let Some(x) = whole
        .elements()
        .iter()
        .find(|x| !x.pow(4).is_ok_and(|y| y.is_identity()))
    {
        return mismatch(format!("element of order > 4: {x}"));
    }

    let all_squares: Vec<Mat3> = (0..k as i64)
        .map(|i| cache.sq(i))
        .collect::<Result<_, _>>()?;
    let squares = group::closure(&g, &all_squares, SUBGROUP_CAP)?;
    if squares.order() != 1 << k
        || squares
            .elements()
            .iter()
            .any(|z| !g.mul(z, z).is_identity())
    {
        return mismatch(format!(
            "<b_i^2> has order {}, expected E_{{2^{k}}}",
            squares.order()
        ));
    }
    let centre: HashSet<Mat3> = group::center(&g, &whole).into_iter().collect();
    if let Some(z) = squares.elements().iter().find(|z| !centre.contains(*z)) {
        return mismatch(format!("{z} lies in <b_i^2> but is not central"));
    }
    // <b_0> is cyclic of order 4, so the centre is larger than <b_0^2> there
    if k >= 2 && centre != squares.element_set() {
        return mismatch(format!("centre order {} != 2^{k}", centre.len()));
    }
    // quotient by <b_i^2> is elementary abelian
    for x in whole.elements() {
        if !squares.contains(&x.mul(x)) {
            return mismatch(format!("square of {x} is outside <b_i^2>"));
        }
    }
    for (i, a) in whole.generators().iter().enumerate() {
        for b in &whole.generators()[i + 1..] {
            if !squares.contains(&g.commutator(a, b)) {
                return mismatch("generator commutator outside <b_i^2>".into());
            }
        }
    }

    let derived = group::derived_subgroup(&g, whole.generators(), SUBGROUP_CAP)?;
    let expected_derived = group::closure(&g, &all_squares[1..], SUBGROUP_CAP)?;
    if derived.element_set() != expected_derived.element_set() {
        return mismatch(format!(
            "derived subgroup (order {}) != <b_i^2 : 1 <= i < {k}> (order {})",
            derived.order(),
            expected_derived.order()
        ));
    }
    if derived.order() != 1 << (k - 1) {
        return mismatch(format!("derived order {} != 2^{}", derived.order(), k - 1));
    }
    Ok(None)
}
