//! Torsion of `E` over the whole cyclotomic `Z_p`-extension of Q.
//!
//! For `p >= 5` nothing grows. For `p = 2` and `p = 3` the classifier walks
//! the possible growth patterns: each candidate order `n` can only gain
//! points in the layer `m = v_p(φ(n))`, so it factors the exact-order
//! division polynomial up to degree `p^m`, recognizes the field cut out by
//! each factor, then checks the field of the y-coordinate. Combinations
//! outside the list of groups that can occur are pruned before any
//! factoring and recorded as evidence.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, is_prime_u64, valuation_u64};
use crate::ec::{Curve, DivisionPolys};
use crate::poly::{factor_over_q, irreducible_factors_up_to, resultant_x, BiPoly, IntPoly, PolyError};
use crate::torsion::{rational_torsion, TorsionGroup};
use crate::tower::{defines_layer, is_layer_cubic, is_layer_quadratic, LayerField, LayerVerdict, TowerError, DEFAULT_SAMPLE_SIZE};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no degree table row for {0}")]
    NotInTable(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error("computed tower group {tower} is impossible over base {base} for p = {p}")]
    Inconsistent { p: u64, base: TorsionGroup, tower: TorsionGroup },
}

/// Admissible degrees `[Q(P):Q]` of a point of prime order `q`.
const DEGREE_TABLE: &[(u64, &[u64])] = &[
    (2, &[1, 2, 3]),
    (3, &[1, 2, 3, 4, 6, 8]),
    (5, &[1, 2, 4, 5, 8, 10, 16, 20, 24]),
    (7, &[1, 2, 3, 6, 7, 9, 12, 14, 18, 21, 24, 36, 42, 48]),
    (11, &[5, 10, 20, 40, 55, 80, 100, 110, 120]),
    (13, &[3, 4, 6, 12, 24, 39, 48, 52, 72, 78, 96, 144, 156, 168]),
    (37, &[12, 36, 72, 444, 1296, 1332, 1368]),
];

pub fn admissible_degrees(q: u64) -> Result<&'static [u64], ClassifyError> {
    DEGREE_TABLE
        .iter()
        .find(|(r, _)| *r == q)
        .map(|(_, d)| *d)
        .ok_or(ClassifyError::NotInTable(q))
}

fn is_power_of(d: u64, p: u64) -> bool {
    let mut d = d;
    while d.is_multiple_of(p) {
        d /= p;
    }
    d == 1
}

/// Layer in which points of order `n` first appear, if they appear at all.
pub fn growth_layer(n: u64, p: u64) -> u32 {
    valuation_u64(euler_phi(n), p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mechanism {
    /// Exact computation of `E(Q)_tors`.
    RationalTorsion,
    /// No growth at all in the `Z_p`-tower for `p >= 5`.
    NoGrowthLargeP,
    /// 2-power part read off from point counts on `f_2, f_4, f_8`.
    TwoPowerCount,
    /// Full 2-torsion appears when `f_2` cuts out the first cubic layer.
    TwoTorsionCubicLayer,
    /// 2-torsion cannot grow in the 3-tower once a rational 2-torsion point exists.
    TwoTorsionFixed,
    /// An irreducible factor of a division polynomial defines a tower layer
    /// and so does the field of the y-coordinate.
    PointOverLayer,
    /// No factor of a division polynomial gives a point over the layer.
    NoPointOverLayer,
    /// No admissible degree of an order-q point is a power of p.
    DegreeTable,
    /// The combination would give a group that does not occur in the tower.
    GroupListExclusion,
    /// Torsion order ruled out by a fixed list of facts about the tower.
    ExcludedOrder,
    /// Odd torsion that is not already rational does not grow.
    OddTorsionRational,
    /// Points of order 27 need the one j-invariant where they occur.
    JInvariantGate,
    /// Sampling could not decide whether a factor defines a layer.
    Inconclusive,
}

/// Data backing a claim: the factor, the field it was matched against and,
/// for negative sampling answers, the prime that disproves membership.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_factor: Option<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_factor: Option<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layer: Option<LayerField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub mechanism: Mechanism,
    pub claim: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Evidence {
    fn new(mechanism: Mechanism, claim: impl Into<String>) -> Self {
        Evidence { mechanism, claim: claim.into(), witness: None }
    }

    fn with(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    /// Re-run the field recognition behind a `PointOverLayer` claim.
    /// Other mechanisms carry nothing to replay and return `true`.
    pub fn replay(&self, sample_size: usize) -> Result<bool, ClassifyError> {
        if self.mechanism != Mechanism::PointOverLayer {
            return Ok(true);
        }
        let Some(w) = &self.witness else { return Ok(false) };
        let (Some(x), Some(layer)) = (&w.x_factor, &w.layer) else { return Ok(false) };
        for g in [Some(x), w.y_factor.as_ref()].into_iter().flatten() {
            match membership(g, layer.p, sample_size)? {
                Membership::In(m) if m <= layer.m => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Resolved,
    /// Some field recognition stayed inconclusive; `tower` is then a lower
    /// bound.
    Unresolved { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub p: u64,
    pub base: TorsionGroup,
    pub tower: TorsionGroup,
    pub verdict: Verdict,
    /// Smallest `m` with `E(Q_{m,p})_tors = E(Q_{∞,p})_tors`, when the
    /// torsion grows.
    pub layer_of_growth: Option<u32>,
    pub evidence: Vec<Evidence>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub sample_size: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { sample_size: DEFAULT_SAMPLE_SIZE }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Membership {
    /// Defines `Q_{m,p}`.
    In(u32),
    Out(Option<u64>),
    Unknown,
}

/// Whether the irreducible `h` defines a layer of the `p`-tower.
fn membership(h: &IntPoly, p: u64, sample_size: usize) -> Result<Membership, ClassifyError> {
    let d = h.deg() as u64;
    if d == 1 {
        return Ok(Membership::In(0));
    }
    if d == 0 || !is_power_of(d, p) {
        return Ok(Membership::Out(None));
    }
    let m = d.ilog(p);
    let exact = |ok: bool| if ok { Membership::In(m) } else { Membership::Out(None) };
    match (p, m) {
        (2, 1) => Ok(exact(is_layer_quadratic(h))),
        (3, 1) => Ok(exact(is_layer_cubic(h)?)),
        _ => Ok(match defines_layer(h, &LayerField::new(p, m)?, sample_size)? {
            LayerVerdict::Yes { .. } => Membership::In(m),
            LayerVerdict::No { witness, .. } => Membership::Out(Some(witness)),
            LayerVerdict::Inconclusive { .. } => Membership::Unknown,
        }),
    }
}

/// Outcome for one irreducible factor `g` of a division polynomial.
enum FactorOutcome {
    /// Points with x-coordinate a root of `g` live in `Q_{layer,p}`.
    Over { layer: u32, y_factor: Option<IntPoly> },
    Not,
    Unknown(String),
}

struct Classifier<'a> {
    p: u64,
    dp: DivisionPolys,
    opts: &'a ClassifyOptions,
    evidence: Vec<Evidence>,
    unresolved: Vec<String>,
    grown_layer: u32,
}

impl Classifier<'_> {
    fn layer(&self, m: u32) -> LayerField {
        LayerField { p: self.p, m }
    }

    fn note(&mut self, e: Evidence) {
        self.evidence.push(e);
    }

    /// Test the x-field of `g`, then (when `with_y`) the field of a
    /// y-coordinate over it, via an irreducible factor of
    /// `Res_x(g(x), y^2 - f_E(x))`.
    fn factor_outcome(&mut self, g: &IntPoly, with_y: bool) -> Result<FactorOutcome, ClassifyError> {
        let mx = match membership(g, self.p, self.opts.sample_size)? {
            Membership::In(m) => m,
            Membership::Out(_) => return Ok(FactorOutcome::Not),
            Membership::Unknown => return Ok(FactorOutcome::Unknown(format!("field of {g}"))),
        };
        if !with_y {
            return Ok(FactorOutcome::Over { layer: mx, y_factor: None });
        }
        let r = resultant_x(g, &BiPoly::y2_minus(self.dp.cubic()));
        let fac = factor_over_q(&r)?;
        let h = fac.factors.iter().map(|(h, _)| h).min_by(|a, b| a.canonical_cmp(b)).expect("resultant is nonconstant");
        Ok(match membership(h, self.p, self.opts.sample_size)? {
            Membership::In(my) => FactorOutcome::Over { layer: mx.max(my), y_factor: Some(h.clone()) },
            Membership::Out(_) => FactorOutcome::Not,
            Membership::Unknown => FactorOutcome::Unknown(format!("y-field over {g}")),
        })
    }

    /// Irreducible factors of `f_n` of degree `p^j`, `j <= max_layer`.
    fn candidate_factors(&mut self, n: u64, max_layer: u32) -> Result<Vec<IntPoly>, ClassifyError> {
        let f = self.dp.exact_order_poly(n);
        let cap = self.p.pow(max_layer) as usize;
        Ok(irreducible_factors_up_to(&f, cap)?
            .into_iter()
            .filter(|g| is_power_of(g.deg() as u64, self.p))
            .collect())
    }

    /// Search for a point of exact order `n` over `Q_{m,p}`, with
    /// `m = v_p(φ(n))`.
    fn find_point(&mut self, n: u64) -> Result<bool, ClassifyError> {
        let m = growth_layer(n, self.p);
        self.find_point_in(n, m, m)
    }

    fn find_point_in(&mut self, n: u64, max_layer: u32, claimed: u32) -> Result<bool, ClassifyError> {
        let candidates = self.candidate_factors(n, max_layer)?;
        let mut pending = None;
        for g in &candidates {
            match self.factor_outcome(g, true)? {
                FactorOutcome::Over { layer, y_factor } => {
                    self.grown_layer = self.grown_layer.max(layer);
                    self.note(
                        Evidence::new(Mechanism::PointOverLayer, format!("point of order {n} over Q_{{{layer},{}}}", self.p)).with(Witness {
                            order: Some(n),
                            x_factor: Some(g.clone()),
                            y_factor,
                            layer: Some(self.layer(layer)),
                            ..Default::default()
                        }),
                    );
                    return Ok(true);
                }
                FactorOutcome::Not => {}
                FactorOutcome::Unknown(what) => pending = Some(what),
            }
        }
        if let Some(what) = pending {
            self.inconclusive(n, what);
        } else {
            self.note(
                Evidence::new(
                    Mechanism::NoPointOverLayer,
                    format!("no point of order {n} over Q_{{{claimed},{}}} ({} candidate factors)", self.p, candidates.len()),
                )
                .with(Witness { order: Some(n), layer: Some(self.layer(claimed)), ..Default::default() }),
            );
        }
        Ok(false)
    }

    fn inconclusive(&mut self, n: u64, what: String) {
        let reason = format!("order {n}: could not decide {what}");
        self.note(Evidence::new(Mechanism::Inconclusive, reason.clone()).with(Witness { order: Some(n), ..Default::default() }));
        self.unresolved.push(reason);
    }

    fn prune(&mut self, n: u64, why: &str) {
        self.note(
            Evidence::new(Mechanism::GroupListExclusion, format!("order {n} skipped: {why}"))
                .with(Witness { order: Some(n), ..Default::default() }),
        );
    }

    fn degree_table_prune(&mut self, q: u64) -> Result<bool, ClassifyError> {
        let degrees = admissible_degrees(q)?;
        let growth: Vec<u64> = degrees.iter().copied().filter(|&d| d > 1 && is_power_of(d, self.p)).collect();
        if growth.is_empty() {
            self.note(
                Evidence::new(
                    Mechanism::DegreeTable,
                    format!("no admissible degree of an order-{q} point is a nontrivial power of {}", self.p),
                )
                .with(Witness { order: Some(q), ..Default::default() }),
            );
        }
        Ok(growth.is_empty())
    }

    fn excluded(&mut self, n: u64, claim: &str) {
        self.note(Evidence::new(Mechanism::ExcludedOrder, claim.to_string()).with(Witness { order: Some(n), ..Default::default() }));
    }

    /// 2-power part over the 2-tower: count points of order dividing
    /// `2, 4, 8` and solve `c_k = 2^(min(a,k) + min(b,k))`.
    fn two_power_part(&mut self) -> Result<(u64, u64), ClassifyError> {
        let mut exact = [0u64; 3];
        for (j, slot) in exact.iter_mut().enumerate() {
            let n = 1u64 << (j + 1);
            let f = self.dp.exact_order_poly(n);
            let cap = f.deg().min(16);
            let factors: Vec<IntPoly> = irreducible_factors_up_to(&f, cap)?
                .into_iter()
                .filter(|g| g.deg().is_power_of_two())
                .collect();
            for g in &factors {
                match self.factor_outcome(g, n > 2)? {
                    FactorOutcome::Over { layer, y_factor } => {
                        let d = g.deg() as u64;
                        *slot += if n == 2 { d } else { 2 * d };
                        self.grown_layer = self.grown_layer.max(layer);
                        if layer > 0 {
                            self.note(
                                Evidence::new(Mechanism::PointOverLayer, format!("{} points of order {n} over Q_{{{layer},2}}", if n == 2 { d } else { 2 * d }))
                                    .with(Witness {
                                        order: Some(n),
                                        x_factor: Some(g.clone()),
                                        y_factor,
                                        layer: Some(self.layer(layer)),
                                        ..Default::default()
                                    }),
                            );
                        }
                    }
                    FactorOutcome::Not => {}
                    FactorOutcome::Unknown(what) => self.inconclusive(n, what),
                }
            }
        }
        let counts = [1 + exact[0], 1 + exact[0] + exact[1], 1 + exact[0] + exact[1] + exact[2]];
        let a = u64::from(counts[0] == 4);
        let b = counts[2].trailing_zeros() as u64 - a;
        let consistent = counts.iter().all(|c| c.is_power_of_two())
            && (1..=3u64).all(|k| counts[k as usize - 1] == 1 << (a.min(k) + b.min(k)));
        let group = (1 << a, 1 << b);
        self.note(
            Evidence::new(
                Mechanism::TwoPowerCount,
                format!("points of order dividing 2, 4, 8 over the tower: {:?}", counts),
            )
            .with(Witness { counts: Some(counts.to_vec()), ..Default::default() }),
        );
        if !consistent {
            let (m, n) = group;
            return Err(ClassifyError::Inconsistent {
                p: 2,
                base: TorsionGroup::trivial(),
                tower: TorsionGroup::new(m.min(2), n.max(m)).unwrap_or(TorsionGroup::trivial()),
            });
        }
        Ok(group)
    }

    fn classify_two(&mut self, base: TorsionGroup) -> Result<TorsionGroup, ClassifyError> {
        let (m2, n2) = self.two_power_part()?;
        let two = TorsionGroup::new(m2, n2).expect("two-power part has m <= 2");
        let base_odd = base.n() >> base.n().trailing_zeros();

        let mut odd = 1u64;
        if two.is_trivial() {
            if self.find_point(7)? {
                odd = 7;
            }
        } else {
            self.prune(7, "a 2-torsion point together with 7-torsion does not occur");
        }
        if odd == 7 {
            self.prune(5, "7-torsion excludes every other torsion");
            self.prune(3, "7-torsion excludes every other torsion");
        } else {
            if two.order() <= 2 {
                if self.find_point(5)? {
                    odd = 5;
                }
            } else {
                self.prune(5, "5-torsion only combines with a single 2-torsion point");
            }
            if odd == 5 {
                self.prune(3, "orders 15 and 30 do not occur");
            } else {
                let blocked = two.n() == 8 || (two.m() == 2 && two.n() >= 4);
                if blocked {
                    self.prune(3, "the 2-power part leaves no room for 3-torsion");
                } else if self.find_point(3)? {
                    odd = 3;
                    if two.is_trivial() {
                        if self.find_point(9)? {
                            odd = 9;
                        }
                    } else {
                        self.prune(9, "orders 18 and 36 do not occur");
                    }
                }
            }
        }
        // larger odd primes
        self.degree_table_prune(11)?;
        self.excluded(13, "no point of order 13 over the 2-tower");
        self.excluded(17, "no point of order 17 over the 2-tower");

        let odd = odd.max(base_odd);
        let tower = TorsionGroup::new(two.m(), two.n() * odd).expect("valid group");
        Ok(tower)
    }

    fn classify_three(&mut self, e: &Curve, base: TorsionGroup) -> Result<TorsionGroup, ClassifyError> {
        // 2-part
        let (b2m, b2n) = base.primary(2);
        let two = if b2n > 1 {
            self.note(Evidence::new(Mechanism::TwoTorsionFixed, format!("2-power part stays {}", TorsionGroup::new(b2m, b2n).unwrap())));
            (b2m, b2n)
        } else {
            let f2 = self.dp.cubic().clone();
            if is_layer_cubic(&f2)? {
                self.grown_layer = self.grown_layer.max(1);
                self.note(
                    Evidence::new(Mechanism::TwoTorsionCubicLayer, "f_2 defines Q_{1,3}: full 2-torsion appears").with(Witness {
                        order: Some(2),
                        x_factor: Some(f2),
                        layer: Some(self.layer(1)),
                        ..Default::default()
                    }),
                );
                (2, 2)
            } else {
                self.note(
                    Evidence::new(Mechanism::NoPointOverLayer, "f_2 does not define Q_{1,3}")
                        .with(Witness { order: Some(2), x_factor: Some(f2), layer: Some(self.layer(1)), ..Default::default() }),
                );
                (1, 1)
            }
        };
        let two_trivial = two.1 == 1;

        // 3-part
        let (_, b3) = base.primary(3);
        let mut three = b3;
        match b3 {
            1 => self.note(Evidence::new(Mechanism::OddTorsionRational, "no rational 3-torsion, so no 3-power torsion over the tower")),
            3 => {
                let j27 = BigRational::from_integer(BigInt::from(-12_288_000i64));
                if *e.j_invariant() == j27 {
                    let m = growth_layer(27, 3);
                    if self.find_point_in(27, m, m)? {
                        three = 27;
                    }
                } else {
                    self.note(
                        Evidence::new(Mechanism::JInvariantGate, "j differs from -12288000, no point of order 27")
                            .with(Witness { order: Some(27), ..Default::default() }),
                    );
                }
                if three == 3 {
                    if two_trivial {
                        if self.find_point(9)? {
                            three = 9;
                        }
                    } else {
                        self.prune(9, "orders 18 and 36 do not occur");
                    }
                }
            }
            _ => self.note(Evidence::new(Mechanism::OddTorsionRational, format!("3-power part stays Z/{b3}"))),
        }

        // 7
        let mut seven = base.primary(7).1;
        if seven == 1 {
            if !two_trivial {
                self.prune(7, "orders 14 and 28 do not occur");
            } else if three >= 9 {
                self.prune(7, "orders 63 and 189 do not occur");
            } else if base.n().is_multiple_of(5) {
                self.prune(7, "order 35 does not occur");
            } else if self.find_point(7)? {
                seven = 7;
            }
        }

        self.degree_table_prune(5)?;
        self.degree_table_prune(11)?;
        self.excluded(13, "no point of order 13 over the 3-tower");
        self.excluded(19, "no point of order 19 over the 3-tower");

        let five = base.primary(5).1;
        let n = two.1 * three * seven * five;
        Ok(TorsionGroup::new(two.0, n).expect("valid group"))
    }
}

/// `E(Q_{∞,p})_tors` with evidence.
pub fn classify(e: &Curve, p: u64, opts: &ClassifyOptions) -> Result<GrowthReport, ClassifyError> {
    if !is_prime_u64(p) {
        return Err(ClassifyError::NotPrime(p));
    }
    let base = rational_torsion(e).group;
    let mut c = Classifier {
        p,
        dp: DivisionPolys::for_curve(e),
        opts,
        evidence: vec![Evidence::new(Mechanism::RationalTorsion, format!("E(Q)_tors = {base}"))],
        unresolved: Vec::new(),
        grown_layer: 0,
    };
    let tower = match p {
        2 => c.classify_two(base)?,
        3 => c.classify_three(e, base)?,
        _ => {
            c.note(Evidence::new(Mechanism::NoGrowthLargeP, format!("torsion does not grow in the {p}-tower")));
            base
        }
    };
    if !base.is_subgroup_of(&tower) || !TorsionGroup::tower_list(p).contains(&tower) {
        return Err(ClassifyError::Inconsistent { p, base, tower });
    }
    let verdict = if c.unresolved.is_empty() {
        Verdict::Resolved
    } else {
        Verdict::Unresolved { reason: c.unresolved.join("; ") }
    };
    Ok(GrowthReport {
        p,
        base,
        tower,
        verdict,
        layer_of_growth: (tower != base).then_some(c.grown_layer.max(1)),
        evidence: c.evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(a: [i64; 5], p: u64) -> GrowthReport {
        classify(&Curve::from_ints(a).unwrap(), p, &ClassifyOptions::default()).unwrap()
    }

    #[test]
    fn degree_table_rows() {
        assert_eq!(admissible_degrees(5).unwrap(), &[1, 2, 4, 5, 8, 10, 16, 20, 24]);
        assert_eq!(admissible_degrees(2).unwrap(), &[1, 2, 3]);
        assert!(admissible_degrees(11).unwrap().iter().all(|&d| !is_power_of(d, 3)));
        assert_eq!(admissible_degrees(17), Err(ClassifyError::NotInTable(17)));
    }

    #[test]
    fn growth_layers() {
        assert_eq!(growth_layer(3, 2), 1);
        assert_eq!(growth_layer(5, 2), 2);
        assert_eq!(growth_layer(7, 2), 1);
        assert_eq!(growth_layer(9, 2), 1);
        assert_eq!(growth_layer(7, 3), 1);
        assert_eq!(growth_layer(9, 3), 1);
        assert_eq!(growth_layer(27, 3), 2);
    }

    #[test]
    fn large_p_is_base() {
        let r = run([1, 0, 1, -36, -70], 7);
        assert_eq!(r.tower, r.base);
        assert_eq!(r.layer_of_growth, None);
    }

    #[test]
    fn fourteen_a2_over_two() {
        let r = run([1, 0, 1, -36, -70], 2);
        assert_eq!(r.base.to_string(), "Z/6");
        assert_eq!(r.tower.to_string(), "Z/2 x Z/6");
        assert_eq!(r.layer_of_growth, Some(1));
        assert_eq!(r.verdict, Verdict::Resolved);
        for e in &r.evidence {
            assert!(e.replay(50).unwrap(), "{e:?}");
        }
    }

    #[test]
    fn twenty_one_over_three() {
        let r = run([1, -1, 1, -5, 5], 3);
        assert_eq!(r.base.to_string(), "Z/3");
        assert_eq!(r.tower.to_string(), "Z/21");
    }

    #[test]
    fn full_two_torsion_over_three() {
        let r = run([0, 0, 0, -81, -243], 3);
        assert!(r.base.is_trivial());
        assert_eq!(r.tower.to_string(), "Z/2 x Z/2");
    }
}
