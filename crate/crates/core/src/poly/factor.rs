//! Factorization over Q: squarefree split, factorization modulo a good
//! prime, multifactor Hensel lifting, and recombination of lifted factors.
//!
//! The degree-restricted search only lifts modular factors small enough to
//! belong to a rational factor of the requested degree; the rest are lifted
//! as a single lump, which keeps large division polynomials affordable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::kronecker;
use super::modp::{distinct_degree_upto, equal_degree, FpPoly};
use super::{IntPoly, PolyError};
use crate::arith::primes_from;

/// Subsets tried during recombination before giving up.
pub const RECOMBINATION_CAP: u64 = 1 << 20;

const FIRST_PRIME: u64 = 13;
const PRIME_SCAN: usize = 60;

/// `f = content * prod(factor^exp)`, factors primitive with positive leading
/// coefficient, sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (g, e) in &self.factors {
            acc = &acc * &g.pow(*e);
        }
        acc
    }
}

/// Squarefree decomposition of the primitive part: pairs `(g_i, i)` with
/// `pp(f) = prod g_i^i`, each `g_i` squarefree and pairwise coprime.
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let f = f.primitive_part();
    if f.deg() == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    let g = f.gcd(&df);
    if g.deg() == 0 {
        return vec![(f, 1)];
    }
    let mut out = Vec::new();
    let mut a = f.div_exact(&g).expect("gcd divides f");
    let mut b = df.div_exact(&g).expect("gcd divides f'");
    let mut c = &b - &a.derivative();
    let mut i = 1;
    while a.deg() > 0 {
        let d = a.gcd(&c);
        if d.deg() > 0 {
            out.push((d.clone(), i));
        }
        a = a.div_exact(&d).expect("d divides a");
        b = c.div_exact(&d).expect("d divides c");
        c = &b - &a.derivative();
        i += 1;
    }
    out
}

/// Complete factorization over Q.
pub fn factor_over_q(f: &IntPoly) -> Result<Factorization, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let mut factors = Vec::new();
    for (g, e) in squarefree_parts(&f.primitive_part()) {
        for h in factor_squarefree(&g)? {
            factors.push((h, e));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { content, factors })
}

/// Irreducible factors over Q of degree at most `max_deg`, sorted
/// canonically, each listed once.
pub fn irreducible_factors_up_to(f: &IntPoly, max_deg: usize) -> Result<Vec<IntPoly>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (g, _) in squarefree_parts(&f.primitive_part()) {
        if max_deg >= g.deg() {
            out.extend(factor_squarefree(&g)?.into_iter().filter(|h| h.deg() <= max_deg));
        } else {
            out.extend(small_factors(&g, max_deg)?.0);
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    Ok(out)
}

/// Distinct rational roots, sorted.
pub fn rational_roots(f: &IntPoly) -> Result<Vec<BigRational>, PolyError> {
    let mut roots: Vec<BigRational> = irreducible_factors_up_to(f, 1)?
        .into_iter()
        .map(|g| BigRational::new(-g.coeff(0), g.coeff(1)))
        .collect();
    roots.sort();
    Ok(roots)
}

/// Squarefree decomposition that skips the gcd computation when a single
/// good prime already certifies squarefreeness.
fn squarefree_parts(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    if f.deg() == 0 {
        return Vec::new();
    }
    if good_primes(f).next().is_some() {
        return vec![(f.clone(), 1)];
    }
    squarefree_decomposition(f)
}

/// Primes `q >= 13` not dividing the leading coefficient with `f mod q`
/// squarefree, among the first few dozen primes.
fn good_primes(f: &IntPoly) -> impl Iterator<Item = u64> + '_ {
    primes_from(FIRST_PRIME).take(PRIME_SCAN).filter(move |&q| {
        let fp = FpPoly::from_int(f, q);
        fp.deg() == f.deg() && !fp.is_zero() && fp.is_squarefree()
    })
}

/// Full factorization of a squarefree primitive polynomial.
fn factor_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>, PolyError> {
    let n = f.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![f.primitive_part()]);
    }
    let (mut found, rest) = small_factors(f, n / 2)?;
    if rest.deg() > 0 {
        found.push(rest.primitive_part());
    }
    found.sort_by(|a, b| a.canonical_cmp(b));
    Ok(found)
}

struct PrimeChoice {
    q: u64,
    small: Vec<FpPoly>,
    lump: Option<FpPoly>,
}

/// Degrees reachable as sums of sub-multisets of `degs`, as a bitmap up to `d_max`.
fn subset_sums(degs: &[usize], d_max: usize) -> Vec<bool> {
    let mut reach = vec![false; d_max + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=d_max).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Distinct-degree parts `(product, degree)` of a reduction.
type DdfParts = Vec<(FpPoly, usize)>;

/// Irreducible factors of degree `<= d_max` of a squarefree polynomial,
/// together with the cofactor left after dividing them out.
fn small_factors(f: &IntPoly, d_max: usize) -> Result<(Vec<IntPoly>, IntPoly), PolyError> {
    let f = f.primitive_part();
    let n = f.deg();
    if n == 0 || d_max == 0 {
        return Ok((Vec::new(), f));
    }
    let candidates = if n > 60 { 3 } else { 5 };
    let mut allowed = vec![true; d_max + 1];
    let mut best: Option<(usize, u64, DdfParts)> = None;
    let mut seen = 0;
    for q in good_primes(&f) {
        let fp = FpPoly::from_int(&f, q).monic();
        let parts = distinct_degree_upto(&fp, d_max);
        let mut degs = Vec::new();
        for (g, d) in &parts {
            for _ in 0..g.deg() / d {
                degs.push(*d);
            }
        }
        let reach = subset_sums(&degs, d_max);
        for (a, r) in allowed.iter_mut().zip(&reach) {
            *a &= *r;
        }
        if best.as_ref().is_none_or(|b| degs.len() < b.0) {
            best = Some((degs.len(), q, parts));
        }
        seen += 1;
        if seen >= candidates || allowed[1..].iter().all(|a| !a) {
            break;
        }
    }
    let Some((_, q, parts)) = best else {
        return Err(PolyError::NoGoodPrime);
    };
    if allowed[1..].iter().all(|a| !a) {
        return Ok((Vec::new(), f));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(q ^ (n as u64) << 16);
    let mut small = Vec::new();
    let mut covered = FpPoly::one(q);
    for (g, d) in &parts {
        covered = covered.mul(g);
        small.extend(equal_degree(g, *d, &mut rng));
    }
    let fp = FpPoly::from_int(&f, q).monic();
    let lump = fp.divrem(&covered).0;
    let choice = PrimeChoice { q, small, lump: (lump.deg() > 0).then_some(lump) };
    recombine(&f, d_max, &allowed, choice)
}

fn recombine(
    f: &IntPoly,
    d_max: usize,
    allowed: &[bool],
    choice: PrimeChoice,
) -> Result<(Vec<IntPoly>, IntPoly), PolyError> {
    let q = BigInt::from(choice.q);
    let lc = f.lc();
    let bound = lc.abs() * (BigInt::one() << d_max) * f.l2_norm_bound();
    let mut k = 1u32;
    let mut modulus = q.clone();
    while modulus <= &bound * 2 {
        modulus *= &q;
        k += 1;
    }
    let r = choice.small.len();
    let mut leaves = choice.small.clone();
    if let Some(l) = &choice.lump {
        leaves.push(l.clone());
    }
    let lifted = hensel_lift(f, &leaves, choice.q, k);
    let lifted: Vec<Vec<BigInt>> = lifted.into_iter().take(r).collect();
    let degs: Vec<usize> = choice.small.iter().map(|g| g.deg()).collect();

    let half = &modulus >> 1;
    let sym = |x: BigInt| -> BigInt {
        let x = x.mod_floor(&modulus);
        if x > half {
            x - &modulus
        } else {
            x
        }
    };

    let mut remaining: Vec<usize> = (0..r).collect();
    let mut found = Vec::new();
    let mut cur = f.clone();
    let mut tested: u64 = 0;
    let mut size = 1;
    'sizes: while size <= remaining.len() {
        let mut sorted: Vec<usize> = remaining.iter().map(|&i| degs[i]).collect();
        sorted.sort_unstable();
        if sorted.iter().take(size).sum::<usize>() > d_max {
            break;
        }
        let lc_cur = cur.lc();
        let c0 = cur.coeff(0);
        let target0 = &lc_cur * &c0;
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let idx: Vec<usize> = combo.iter().map(|&j| remaining[j]).collect();
            let d: usize = idx.iter().map(|&i| degs[i]).sum();
            if d <= d_max && allowed[d] {
                tested += 1;
                if tested > RECOMBINATION_CAP {
                    return Err(PolyError::RecombinationLimit(RECOMBINATION_CAP));
                }
                let mut t0 = lc_cur.clone();
                for &i in &idx {
                    t0 = (t0 * &lifted[i][0]).mod_floor(&modulus);
                }
                let t0 = sym(t0);
                let passes = if c0.is_zero() {
                    true
                } else {
                    !t0.is_zero() && (&target0 % &t0).is_zero()
                };
                if passes {
                    let mut g = vec![lc_cur.clone()];
                    for &i in &idx {
                        g = kronecker::mul(&g, &lifted[i]).into_iter().map(|c| c.mod_floor(&modulus)).collect();
                    }
                    let cand = IntPoly::new(g.into_iter().map(&sym).collect()).primitive_part();
                    if let Some(quot) = cur.div_exact(&cand) {
                        found.push(cand);
                        cur = quot;
                        let used: Vec<usize> = combo.clone();
                        remaining = remaining
                            .iter()
                            .enumerate()
                            .filter(|(j, _)| !used.contains(j))
                            .map(|(_, &i)| i)
                            .collect();
                        continue 'sizes;
                    }
                }
            }
            if !next_combination(&mut combo, remaining.len()) {
                break;
            }
        }
        size += 1;
    }
    found.sort_by(|a, b| a.canonical_cmp(b));
    Ok((found, cur.primitive_part()))
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn reduce(v: Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.into_iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn mulm(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    reduce(kronecker::mul(a, b), m)
}

fn addm(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect(), m)
}

fn subm(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect(), m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for top in (db..r.len()).rev() {
        let t = r[top].mod_floor(m);
        if t.is_zero() {
            continue;
        }
        for j in 0..db {
            r[top - db + j] -= &t * &b[j];
        }
        q[top - db] = t;
    }
    r.truncate(db);
    (reduce(q, m), reduce(r, m))
}

struct Node {
    poly: Vec<BigInt>,
    s: Vec<BigInt>,
    t: Vec<BigInt>,
    kids: Option<Box<(Node, Node)>>,
    leaf: usize,
}

fn to_big(p: &FpPoly) -> Vec<BigInt> {
    p.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn build(leaves: &[(usize, FpPoly)]) -> (Node, FpPoly) {
    if leaves.len() == 1 {
        let (i, g) = &leaves[0];
        let node = Node { poly: to_big(g), s: Vec::new(), t: Vec::new(), kids: None, leaf: *i };
        return (node, g.clone());
    }
    let total: usize = leaves.iter().map(|(_, g)| g.deg()).sum();
    let mut acc = 0;
    let mut cut = 1;
    for (j, (_, g)) in leaves.iter().enumerate() {
        acc += g.deg();
        if 2 * acc >= total {
            cut = (j + 1).clamp(1, leaves.len() - 1);
            break;
        }
    }
    let (mut a, mut pa) = build(&leaves[..cut]);
    let (mut b, mut pb) = build(&leaves[cut..]);
    if pa.deg() < pb.deg() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut pa, &mut pb);
    }
    let (_, s, t) = pa.xgcd(&pb);
    let prod = pa.mul(&pb);
    let node = Node { poly: to_big(&prod), s: to_big(&s), t: to_big(&t), kids: Some(Box::new((a, b))), leaf: 0 };
    (node, prod)
}

/// One quadratic Hensel step for `f = g*h`, `s*g + t*h = 1`, all monic
/// factors; inputs valid modulo `m`, outputs modulo `big` (`big | m^2`).
fn lift_node(node: &mut Node, target: Vec<BigInt>, big: &BigInt) {
    if let Some(kids) = node.kids.as_mut() {
        let (left, right) = &mut **kids;
        let g = &left.poly;
        let h = &right.poly;
        let (s, t) = (&node.s, &node.t);
        let e = subm(&target, &mulm(g, h, big), big);
        let (qq, rr) = divrem_monic(&mulm(s, &e, big), h, big);
        let g_new = addm(&addm(g, &mulm(t, &e, big), big), &mulm(&qq, g, big), big);
        let h_new = addm(h, &rr, big);
        let b = subm(&addm(&mulm(s, &g_new, big), &mulm(t, &h_new, big), big), &[BigInt::one()], big);
        let (c, d) = divrem_monic(&mulm(s, &b, big), &h_new, big);
        let s_new = subm(s, &d, big);
        let t_new = subm(&subm(t, &mulm(t, &b, big), big), &mulm(&c, &g_new, big), big);
        node.s = s_new;
        node.t = t_new;
        lift_node(left, g_new, big);
        lift_node(right, h_new, big);
    }
    node.poly = target;
}

fn collect(node: &Node, out: &mut Vec<(usize, Vec<BigInt>)>) {
    match &node.kids {
        None => out.push((node.leaf, node.poly.clone())),
        Some(k) => {
            collect(&k.0, out);
            collect(&k.1, out);
        }
    }
}

/// Lift the monic factorization `f/lc(f) = prod leaves (mod q)` to
/// modulus `q^k`. Returns the lifted monic factors in input order.
pub(crate) fn hensel_lift(f: &IntPoly, leaves: &[FpPoly], q: u64, k: u32) -> Vec<Vec<BigInt>> {
    let qb = BigInt::from(q);
    let indexed: Vec<(usize, FpPoly)> = leaves.iter().cloned().enumerate().collect();
    let (mut root, _) = build(&indexed);
    let mut schedule = vec![k];
    while *schedule.last().unwrap() > 1 {
        let last = *schedule.last().unwrap();
        schedule.push(last.div_ceil(2));
    }
    schedule.reverse();
    for &e in schedule.iter().skip(1) {
        let big = num_traits::pow(qb.clone(), e as usize);
        let inv = f.lc().mod_floor(&big).modinv(&big).expect("lc is a unit");
        let target = reduce(f.coeffs().iter().map(|c| c * &inv).collect(), &big);
        lift_node(&mut root, target, &big);
    }
    if k == 1 {
        let big = qb;
        let inv = f.lc().mod_floor(&big).modinv(&big).expect("lc is a unit");
        root.poly = reduce(f.coeffs().iter().map(|c| c * &inv).collect(), &big);
    }
    let mut out = Vec::new();
    collect(&root, &mut out);
    out.sort_by_key(|(i, _)| *i);
    out.into_iter().map(|(_, p)| p).collect()
}
