//! Multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Terms are kept sorted in descending lexicographic order of their exponent
//! vectors (the chart's declared coordinate order), with no zero coefficients.
//! This is the workhorse under `Expression`; rational scalars never enter
//! here, they live in the expression's front coefficient.

use super::rational::{int_sign, Int, Rat};
use num::{Integer, One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    /// (exponents, coefficient), descending lex, coefficients nonzero.
    terms: Vec<(Vec<u32>, Int)>,
}

fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Int::one())
    }

    pub fn constant(nvars: usize, c: Int) -> Self {
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        Poly { nvars, terms: vec![(vec![0; nvars], c)] }
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Poly { nvars, terms: vec![(e, Int::one())] }
    }

    /// Builds from unsorted (exponents, coefficient) pairs, combining duplicates.
    pub fn from_terms(nvars: usize, mut raw: Vec<(Vec<u32>, Int)>) -> Self {
        raw.sort_by(|a, b| lex_cmp(&b.0, &a.0));
        let mut terms: Vec<(Vec<u32>, Int)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            debug_assert_eq!(e.len(), nvars);
            match terms.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u32>, Int)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || self.terms[0].0.iter().all(|&e| e == 0)
    }

    /// The constant value; only meaningful when `is_constant`.
    pub fn constant_value(&self) -> Int {
        if self.terms.is_empty() {
            Int::zero()
        } else {
            self.terms[0].1.clone()
        }
    }

    /// Leading coefficient under lex order (0 for the zero polynomial).
    pub fn leading_coeff(&self) -> Int {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(Int::zero)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] > 0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match lex_cmp(&other.terms[j].0, &self.terms[i].0) {
                Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        terms.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Poly { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                raw.push((e, ca * cb));
            }
        }
        Poly::from_terms(self.nvars, raw)
    }

    pub fn mul_int(&self, c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Poly {
        let mut raw = Vec::new();
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                raw.push((e2, c * Int::from(e[v])));
            }
        }
        Poly::from_terms(self.nvars, raw)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = Rat::from_integer(c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= pow_rat(&point[v], k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Positive gcd of all integer coefficients (0 for the zero polynomial).
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by an integer known to divide every coefficient.
    pub fn div_int_exact(&self, c: &Int) -> Poly {
        debug_assert!(!c.is_zero());
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k / c)).collect(),
        }
    }

    /// Integer-primitive part with positive leading coefficient.
    pub fn primitive_normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if int_sign(&self.leading_coeff()) < 0 {
            c = -c;
        }
        self.div_int_exact(&c)
    }

    /// Exact multivariate division; `None` if `self` is not a multiple of `d`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        debug_assert_eq!(self.nvars, d.nvars);
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        let mut rem = self.clone();
        let mut raw = Vec::new();
        let (dlead_e, dlead_c) = (&d.terms[0].0, &d.terms[0].1);
        while !rem.is_zero() {
            let (rlead_e, rlead_c) = (&rem.terms[0].0, &rem.terms[0].1);
            let mut qe = Vec::with_capacity(self.nvars);
            for (a, b) in rlead_e.iter().zip(dlead_e) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let (qc, r) = rlead_c.div_rem(dlead_c);
            if !r.is_zero() {
                return None;
            }
            let t = Poly { nvars: self.nvars, terms: vec![(qe.clone(), qc.clone())] };
            rem = rem.sub(&t.mul(d));
            raw.push((qe, qc));
        }
        Some(Poly::from_terms(self.nvars, raw))
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`,
    /// indexed by the power of `v` (each returned poly has exponent 0 in `v`).
    fn univar_coeffs(&self, v: usize) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Vec<u32>, Int)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            buckets[k].push((e2, c.clone()));
        }
        buckets.into_iter().map(|raw| Poly::from_terms(self.nvars, raw)).collect()
    }

    fn from_univar(nvars: usize, v: usize, coeffs: &[Poly]) -> Poly {
        let mut raw = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                raw.push((e2, c.clone()));
            }
        }
        Poly::from_terms(nvars, raw)
    }

    /// Content with respect to `v`: gcd of the coefficient polynomials.
    fn content_in(&self, v: usize) -> Poly {
        let coeffs = self.univar_coeffs(v);
        let mut g = Poly::zero(self.nvars);
        for c in coeffs {
            if c.is_zero() {
                continue;
            }
            g = poly_gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }
}

fn pow_rat(base: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    let mut b = base.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &b;
        }
        k >>= 1;
        if k > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Exact pseudo-remainder lc_v(b)^(delta+1) * a mod b where
/// delta = deg_v a - deg_v b. Tracks how many lc multiplications the
/// reduction used and tops the power up at the end, as the subresultant
/// bookkeeping requires the exact exponent.
fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let delta = a.degree_in(v) - db;
    let bu = b.univar_coeffs(v);
    let blead = bu.last().unwrap().clone();
    let mut r = a.clone();
    let mut applied = 0u32;
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let ru = r.univar_coeffs(v);
        let rlead = ru.last().unwrap().clone();
        // r <- r*lc(b) - lc(r)*v^(dr-db)*b
        let shift = Poly::from_univar(
            a.nvars,
            v,
            &std::iter::repeat(Poly::zero(a.nvars))
                .take((dr - db) as usize)
                .chain(std::iter::once(rlead))
                .collect::<Vec<_>>(),
        );
        r = r.mul(&blead).sub(&shift.mul(b));
        applied += 1;
    }
    if applied < delta + 1 && !r.is_zero() {
        r = r.mul(&blead.pow(delta + 1 - applied));
    }
    r
}

/// Per-variable minimum exponents: the monomial content.
fn monomial_content(p: &Poly) -> Vec<u32> {
    let mut m = vec![u32::MAX; p.nvars];
    for (e, _) in &p.terms {
        for (v, &k) in e.iter().enumerate() {
            m[v] = m[v].min(k);
        }
    }
    m.iter().map(|&k| if k == u32::MAX { 0 } else { k }).collect()
}

fn shift_down(p: &Poly, m: &[u32]) -> Poly {
    Poly {
        nvars: p.nvars,
        terms: p
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone()))
            .collect(),
    }
}

/// Multivariate gcd over the integers. Integer and monomial contents are
/// split off first; a sound univariate-specialization filter settles the
/// (very common) coprime case; otherwise a subresultant pseudo-remainder
/// sequence runs in the best main variable. The result carries positive
/// leading coefficient.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return normalize_sign(q.clone());
    }
    if q.is_zero() {
        return normalize_sign(p.clone());
    }
    if p.is_one() || q.is_one() {
        return Poly::one(p.nvars);
    }
    if p == q {
        return normalize_sign(p.clone());
    }
    let cp = p.content();
    let cq = q.content();
    let c = cp.gcd(&cq);
    // Common monomial factor out; each side's own monomial factor is coprime
    // to the other side afterwards, so it can be stripped entirely.
    let mp = monomial_content(p);
    let mq = monomial_content(q);
    let common: Vec<u32> = mp.iter().zip(&mq).map(|(a, b)| *a.min(b)).collect();
    let pp = shift_down(&p.div_int_exact(&cp), &mp);
    let qq = shift_down(&q.div_int_exact(&cq), &mq);
    let g = gcd_primitive(&pp, &qq);
    let mono = Poly {
        nvars: p.nvars,
        terms: vec![(common, Int::one())],
    };
    normalize_sign(g.mul(&mono).mul_int(&c))
}

fn normalize_sign(p: Poly) -> Poly {
    if int_sign(&p.leading_coeff()) < 0 {
        p.neg()
    } else {
        p
    }
}

/// Specializes every variable except `v` to the given small integers,
/// leaving a univariate polynomial in `v`.
fn specialize_except(p: &Poly, v: usize, assign: &[Int]) -> Poly {
    let mut raw = Vec::with_capacity(p.terms.len());
    for (e, c) in &p.terms {
        let mut coeff = c.clone();
        for (w, &k) in e.iter().enumerate() {
            if w == v {
                continue;
            }
            for _ in 0..k {
                coeff = &coeff * &assign[w];
            }
        }
        let mut e2 = vec![0; p.nvars];
        e2[v] = e[v];
        raw.push((e2, coeff));
    }
    Poly::from_terms(p.nvars, raw)
}

/// Degree in `v` of gcd of two univariate (in `v`) polynomials; contents do
/// not matter, only the degree.
fn univar_gcd_degree(mut a: Poly, mut b: Poly, v: usize) -> u32 {
    if a.is_zero() {
        return b.degree_in(v);
    }
    if b.is_zero() {
        return a.degree_in(v);
    }
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.degree_in(v) == 0 {
            return 0;
        }
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return b.degree_in(v);
        }
        // keep coefficients in check
        let c = r.content();
        a = b;
        b = r.div_int_exact(&c);
    }
}

/// Sound coprimality proof by specialization: if for some assignment that
/// preserves the v-degree of one operand the univariate gcd is constant, the
/// true gcd has v-degree zero. Returns true when every shared variable is
/// proven out.
fn proven_coprime(p: &Poly, q: &Poly) -> bool {
    let samples: [&[i64]; 3] = [
        &[2, 3, 5, 7, 11, 13, 17, 19],
        &[3, 7, 2, 11, 5, 17, 13, 23],
        &[5, 2, 7, 3, 13, 11, 19, 29],
    ];
    'vars: for v in 0..p.nvars() {
        if !(p.uses_var(v) && q.uses_var(v)) {
            continue;
        }
        for sample in samples {
            let assign: Vec<Int> = (0..p.nvars())
                .map(|w| Int::from(sample[w % sample.len()]))
                .collect();
            let sp = specialize_except(p, v, &assign);
            let sq = specialize_except(q, v, &assign);
            let keeps_degree =
                sp.degree_in(v) == p.degree_in(v) || sq.degree_in(v) == q.degree_in(v);
            if !keeps_degree || sp.is_zero() || sq.is_zero() {
                continue;
            }
            if univar_gcd_degree(sp, sq, v) == 0 {
                continue 'vars;
            } else {
                return false; // shared factor plausible; run the real PRS
            }
        }
        return false; // could not certify this variable
    }
    true
}

/// Both inputs have integer content 1 and no monomial content.
fn gcd_primitive(p: &Poly, q: &Poly) -> Poly {
    if p.is_constant() || q.is_constant() {
        return Poly::one(p.nvars);
    }
    // Pick a main variable present in both, minimizing the smaller degree.
    let mut main: Option<(usize, u32)> = None;
    for v in 0..p.nvars() {
        if p.uses_var(v) && q.uses_var(v) {
            let d = p.degree_in(v).min(q.degree_in(v));
            if main.map_or(true, |(_, best)| d < best) {
                main = Some((v, d));
            }
        }
    }
    let v = match main {
        Some((v, _)) => v,
        // Disjoint variable sets: only constant common divisors, contents are 1.
        None => {
            // A variable in p only: gcd(p, q) = gcd(content_v(p), q).
            let vp = (0..p.nvars()).find(|&v| p.uses_var(v)).unwrap();
            return gcd_primitive(&p.content_in(vp), q);
        }
    };
    if p.nvars() > 1 && proven_coprime(p, q) {
        return Poly::one(p.nvars);
    }
    let cp = p.content_in(v);
    let cq = q.content_in(v);
    let cg = poly_gcd(&cp, &cq);
    let mut a = p.exact_div(&cp).expect("content divides");
    let mut b = q.exact_div(&cq).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    // Subresultant pseudo-remainder sequence.
    let mut g_coef = Poly::one(p.nvars);
    let mut h_coef = Poly::one(p.nvars);
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            let bp = b.exact_div(&b.content_in(v)).expect("content divides");
            return normalize_sign(cg.mul(&bp.div_int_exact(&bp.content())));
        }
        if r.degree_in(v) == 0 {
            return normalize_sign(cg);
        }
        let divisor = g_coef.mul(&h_coef.pow(delta));
        a = b;
        b = r.exact_div(&divisor).expect("subresultant division is exact");
        let au = a.univar_coeffs(v);
        g_coef = au.last().unwrap().clone();
        h_coef = if delta == 0 {
            h_coef
        } else if delta == 1 {
            g_coef.clone()
        } else {
            g_coef
                .pow(delta)
                .exact_div(&h_coef.pow(delta - 1))
                .expect("subresultant h-update is exact")
        };
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", render_poly(self, &(0..self.nvars).map(|i| format!("v{i}")).collect::<Vec<_>>()))
    }
}

/// Canonical rendering in the expression grammar; reparses to the same poly.
pub fn render_poly(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.terms.iter().enumerate() {
        let neg = int_sign(c) < 0;
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        // In the grammar a leading '-' is part of `base`, so "-x1^2" would
        // reparse as (-x1)^2. A leading negative power term therefore needs
        // its coefficient spelled out: "-1*x1^2".
        let leading_power_hazard =
            idx == 0 && neg && e.iter().find(|&&k| k > 0).map_or(false, |_| {
                let first = e.iter().position(|&k| k > 0).unwrap();
                e[first] >= 2
            });
        if !abs.is_one() || e.iter().all(|&k| k == 0) || leading_power_hazard {
            factors.push(abs.to_string());
        }
        for (v, &k) in e.iter().enumerate() {
            if k == 1 {
                factors.push(names[v].clone());
            } else if k > 1 {
                factors.push(format!("{}^{}", names[v], k));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rational::int;

    fn p2(terms: &[(&[u32], i64)]) -> Poly {
        Poly::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), int(*c))).collect())
    }

    #[test]
    fn arithmetic_basics() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y);
        let prod = s.mul(&s);
        // (x+y)^2 = x^2 + 2xy + y^2
        assert_eq!(prod, p2(&[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
        assert_eq!(prod, s.pow(2));
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn exact_division() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let a = x.pow(2).sub(&y.pow(2));
        let b = x.sub(&y);
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, x.add(&y));
        assert!(a.exact_div(&x.add(&Poly::one(2))).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let common = x.mul(&y).add(&z.pow(2)); // xy + z^2
        let a = common.mul(&x.add(&y)).mul_int(&int(6));
        let b = common.mul(&x.sub(&z)).mul_int(&int(4));
        let g = poly_gcd(&a, &b);
        assert_eq!(g, common.mul_int(&int(2)));
        // gcd of coprime polys is a constant
        let g2 = poly_gcd(&x.add(&y), &x.add(&z));
        assert!(g2.is_one());
    }

    #[test]
    fn gcd_negative_leading() {
        let x = Poly::var(1, 0);
        let a = x.pow(2).neg().add(&Poly::one(1)); // 1 - x^2
        let b = x.sub(&Poly::one(1));              // x - 1
        let g = poly_gcd(&a, &b);
        assert_eq!(g, b); // positive leading coefficient
    }

    #[test]
    fn derivative_and_eval() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.pow(3).mul(&y).add(&y.pow(2)); // x^3 y + y^2
        assert_eq!(p.derivative(0), x.pow(2).mul(&y).mul_int(&int(3)));
        let v = p.eval(&[crate::expr::rational::rat_int(2), crate::expr::rational::rat_int(3)]);
        assert_eq!(v, crate::expr::rational::rat_int(33));
    }
}
