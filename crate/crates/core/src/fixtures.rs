//! Builtin models. Fibre numerators come from brute-force point counts of
//! hyperelliptic curves `y² + h(x)y = f(x)` over `F_p` and `F_{p²}`.

use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::ffcurves::{closed_point_counts, CurveFF, CurveFamily};
use crate::surface::{FibreDesc, NumberField, SurfaceModel};

/// `F_{p²} = F_p(√r)` for odd `p`, or `F_4 = F_2(w)` with `w² = w + 1`.
#[derive(Debug, Clone, Copy)]
struct Fp2 {
    p: i64,
    r: i64,
}

impl Fp2 {
    fn new(p: i64) -> Self {
        let r = if p == 2 {
            0
        } else {
            (2..p).find(|a| legendre(*a, p) == -1).expect("odd prime has a non-residue")
        };
        Self { p, r }
    }

    fn mul(&self, (a, b): (i64, i64), (c, d): (i64, i64)) -> (i64, i64) {
        let p = self.p;
        if p == 2 {
            ((a * c + b * d) % 2, (a * d + b * c + b * d) % 2)
        } else {
            ((a * c + self.r * b % p * d) % p, (a * d + b * c) % p)
        }
    }

    fn add(&self, (a, b): (i64, i64), (c, d): (i64, i64)) -> (i64, i64) {
        ((a + c) % self.p, (b + d) % self.p)
    }

    fn eval(&self, poly: &[i64], x: (i64, i64)) -> (i64, i64) {
        let mut acc = (0, 0);
        for c in poly.iter().rev() {
            acc = self.add(self.mul(acc, x), (c.rem_euclid(self.p), 0));
        }
        acc
    }

    /// Quadratic character of `F_{p²}` via the norm to `F_p`.
    fn chi(&self, (a, b): (i64, i64)) -> i64 {
        let p = self.p;
        let n = (a * a - self.r * b % p * b).rem_euclid(p);
        legendre(n, p)
    }

    fn elements(&self) -> impl Iterator<Item = (i64, i64)> {
        let p = self.p;
        (0..p).flat_map(move |a| (0..p).map(move |b| (a, b)))
    }
}

fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r = 1i64;
    let (mut b, mut e) = (a, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

fn poly_mod(a: &[i64], p: i64) -> Vec<i64> {
    let mut v: Vec<i64> = a.iter().map(|c| c.rem_euclid(p)).collect();
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let (mut b, mut e) = (a.rem_euclid(p), p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn is_zero_poly(a: &[i64]) -> bool {
    a.len() == 1 && a[0] == 0
}

fn poly_rem(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    let mut a = poly_mod(a, p);
    let lead = inv_mod(*b.last().expect("nonzero divisor"), p);
    while a.len() >= b.len() && !is_zero_poly(&a) {
        let shift = a.len() - b.len();
        let f = a.last().unwrap() * lead % p;
        for (k, c) in b.iter().enumerate() {
            a[k + shift] = (a[k + shift] - f * c).rem_euclid(p);
        }
        a = poly_mod(&a, p);
    }
    a
}

fn poly_gcd_degree(a: &[i64], b: &[i64], p: i64) -> usize {
    let (mut a, mut b) = (poly_mod(a, p), poly_mod(b, p));
    while !is_zero_poly(&b) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() - 1
}

fn derivative(a: &[i64]) -> Vec<i64> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as i64 * c)
        .collect()
}

/// Hyperelliptic model `y² + h(x)y = f(x)` with `deg f = 2g + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperelliptic {
    pub h: Vec<i64>,
    pub f: Vec<i64>,
}

impl Hyperelliptic {
    pub fn new(h: Vec<i64>, f: Vec<i64>) -> Result<Self> {
        if f.len() < 4 || !f.len().is_multiple_of(2) {
            return Err(Error::Validation("f must have odd degree at least 3".into()));
        }
        Ok(Self { h, f })
    }

    pub fn genus(&self) -> u32 {
        (self.f.len() as u32 - 2) / 2
    }

    /// `4f + h²`, the discriminant form for odd characteristic.
    fn completed(&self) -> Vec<i64> {
        let n = self.f.len().max(2 * self.h.len());
        let mut out = vec![0i64; n];
        for (k, c) in self.f.iter().enumerate() {
            out[k] += 4 * c;
        }
        for (i, a) in self.h.iter().enumerate() {
            for (j, b) in self.h.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    }

    /// Good reduction at `p`: for odd `p`, `4f + h²` is squarefree of full
    /// degree; for `p = 2`, `h` is a unit constant (no affine singularities).
    pub fn smooth_at(&self, p: u64) -> bool {
        let p = p as i64;
        if p == 2 {
            let h = poly_mod(&self.h, 2);
            return h == [1] && self.f.last().map(|c| c.rem_euclid(2)) == Some(1);
        }
        let big_f = self.completed();
        let reduced = poly_mod(&big_f, p);
        if reduced.len() != self.f.len() {
            return false;
        }
        poly_gcd_degree(&reduced, &derivative(&reduced), p) == 0
    }

    /// `(N_1, N_2)`: projective points over `F_p` and `F_{p²}`, one at infinity.
    pub fn point_counts(&self, p: u64) -> Result<(i128, i128)> {
        if !self.smooth_at(p) {
            return Err(Error::Validation(format!("model is singular mod {p}")));
        }
        let field = Fp2::new(p as i64);
        let pi = p as i64;
        let (mut n1, mut n2) = (1i128, 1i128);
        if pi == 2 {
            for x in field.elements() {
                for y in field.elements() {
                    let lhs = field.add(field.mul(y, y), field.mul(field.eval(&self.h, x), y));
                    if lhs == field.eval(&self.f, x) {
                        n2 += 1;
                        if x.1 == 0 && y.1 == 0 {
                            n1 += 1;
                        }
                    }
                }
            }
        } else {
            let big_f = self.completed();
            for x in field.elements() {
                let v = field.eval(&big_f, x);
                n2 += 1 + field.chi(v) as i128;
                if x.1 == 0 {
                    n1 += 1 + legendre(v.0, pi) as i128;
                }
            }
        }
        Ok((n1, n2))
    }

    /// Zeta numerator over `F_p` from brute-force counts.
    pub fn curve(&self, p: u64) -> Result<CurveFF> {
        let (n1, n2) = self.point_counts(p)?;
        numerator_from_counts(p, self.genus(), &[n1, n2])
    }
}

/// Recovers `P(t)` of a genus `g ≤ 2` curve from `N_1, …, N_g`.
pub fn numerator_from_counts(q: u64, g: u32, counts: &[i128]) -> Result<CurveFF> {
    let g_us = g as usize;
    if counts.len() < g_us {
        return Err(Error::Validation(format!("need {g} point counts")));
    }
    let qi = q as i128;
    let sums: Vec<i128> = (1..=g_us)
        .map(|n| qi.pow(n as u32) + 1 - counts[n - 1])
        .collect();
    let mut c = vec![1i128; 2 * g_us + 1];
    for n in 1..=g_us {
        let mut acc = sums[n - 1];
        for k in 1..n {
            acc += c[k] * sums[n - k - 1];
        }
        if acc % n as i128 != 0 {
            return Err(Error::InvalidNumerator(format!(
                "point counts give a non-integral coefficient c_{n}"
            )));
        }
        c[n] = -acc / n as i128;
    }
    for k in 0..g_us {
        c[2 * g_us - k] = qi.pow((g_us - k) as u32) * c[k];
    }
    let numerator = c
        .into_iter()
        .map(|v| i64::try_from(v).map_err(|_| Error::Overflow("numerator")))
        .collect::<Result<Vec<_>>>()?;
    let family = match g {
        0 => CurveFamily::ProjectiveLine,
        1 => CurveFamily::Elliptic,
        _ => CurveFamily::Generic,
    };
    let curve = CurveFF::new(q, g, numerator, family)?;
    closed_point_counts(&curve, 2 * g_us + 2)?;
    Ok(curve)
}

/// First smooth member of `y² = x³ + x + c` (genus 1) or `y² = x^{2g+1} − x + c`
/// (or `y² + y = x^{2g+1}` at 2).
pub fn smooth_hyperelliptic(g: u32, p: u64) -> Result<Hyperelliptic> {
    let deg = 2 * g as usize + 1;
    if p == 2 {
        let mut f = vec![0i64; deg + 1];
        f[deg] = 1;
        return Hyperelliptic::new(vec![1], f);
    }
    for c in 1..p as i64 + 10 {
        let mut f = vec![0i64; deg + 1];
        f[deg] = 1;
        f[1] = if g == 1 { 1 } else { -1 };
        f[0] = c;
        let model = Hyperelliptic::new(vec![], f)?;
        if model.smooth_at(p) {
            return Ok(model);
        }
    }
    Err(Error::Unsupported(format!("no smooth genus-{g} model found mod {p}")))
}

/// Prime carrying the single nodal fibre of the synthetic models.
pub const GENUS2_NODAL_PRIME: u64 = 11;
pub const ELLIPTIC_NODAL_PRIME: u64 = 7;

/// Normalization of the nodal fibre `y² = x²(x³ + x + 1)` over `F_11`.
pub fn genus2_nodal_component() -> Result<Hyperelliptic> {
    Hyperelliptic::new(vec![], vec![1, 1, 0, 1])
}

/// Genus 2 over `Q`, good fibres for `p ≤ p_max` except one split node at 11
/// (normalization elliptic), one horizontal curve with residue field `Q`.
pub fn genus2_synthetic(p_max: u64) -> Result<SurfaceModel> {
    let mut fibres = Vec::new();
    for p in primes_up_to(p_max) {
        if p == GENUS2_NODAL_PRIME {
            let e = genus2_nodal_component()?.curve(p)?;
            fibres.push(FibreDesc::singular(p, vec![e], &[1]));
        } else {
            fibres.push(FibreDesc::good(smooth_hyperelliptic(2, p)?.curve(p)?));
        }
    }
    SurfaceModel::new(2, NumberField::rational(), fibres, vec![NumberField::rational()], p_max)
}

/// Genus 1 over `Q`, good fibres except a nodal cubic at 7.
pub fn elliptic_synthetic(p_max: u64) -> Result<SurfaceModel> {
    let mut fibres = Vec::new();
    for p in primes_up_to(p_max) {
        if p == ELLIPTIC_NODAL_PRIME {
            fibres.push(FibreDesc::singular(p, vec![CurveFF::projective_line(p)?], &[1]));
        } else {
            fibres.push(FibreDesc::good(smooth_hyperelliptic(1, p)?.curve(p)?));
        }
    }
    SurfaceModel::new(1, NumberField::rational(), fibres, vec![NumberField::rational()], p_max)
}

/// `P¹` over `Q` with fibres up to `p_max`; its zeta is taken in closed form.
pub fn projective_line_over_q(p_max: u64) -> Result<SurfaceModel> {
    SurfaceModel::projective_line(NumberField::rational(), p_max)
}
