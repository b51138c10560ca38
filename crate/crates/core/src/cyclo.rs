//! Exact arithmetic in the cyclotomic fields Q(ζ_m).
//!
//! Values are polynomials in ζ_m with big-rational coefficients, kept reduced
//! modulo the m-th cyclotomic polynomial Φ_m. The reduced form is canonical:
//! two values of the same order are equal iff their coefficient vectors are.
//! Mixed orders promote to the lcm before arithmetic. No floating point.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex};

/// Compute-once, read-many cache of cyclotomic polynomials.
static PHI_CACHE: Lazy<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Φ_m as ascending integer coefficients (monic, degree φ(m)), computed by
/// exact division: Φ_m = (x^m - 1) / Π_{d|m, d<m} Φ_d.
pub fn cyclotomic_poly(m: u64) -> Arc<Vec<BigInt>> {
    assert!(m >= 1);
    if let Some(p) = PHI_CACHE.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = -BigInt::one();
    poly[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            poly = exact_div(&poly, &cyclotomic_poly(d));
        }
    }
    let arc = Arc::new(poly);
    PHI_CACHE
        .lock()
        .unwrap()
        .entry(m)
        .or_insert(arc)
        .clone()
}

/// Long division of integer polynomials by a monic divisor; panics if the
/// remainder is nonzero.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for i in (0..=qn).rev() {
        let c = std::mem::take(&mut rem[i + dn]);
        if !c.is_zero() {
            for j in 0..dn {
                rem[i + j] -= &c * &den[j];
            }
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "division is not exact");
    quot
}

/// An element of Q(ζ_m) in canonical reduced form.
#[derive(Clone, Debug)]
pub struct Cyclo {
    m: u64,
    /// Length deg Φ_m; coefficient of ζ_m^k at index k.
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero(m: u64) -> Self {
        let deg = cyclotomic_poly(m).len() - 1;
        Cyclo {
            m,
            coeffs: vec![BigRational::zero(); deg],
        }
    }

    pub fn one(m: u64) -> Self {
        Cyclo::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u64, q: BigRational) -> Self {
        let mut out = Cyclo::zero(m);
        out.coeffs[0] = q;
        out
    }

    pub fn from_integer(m: u64, k: i64) -> Self {
        Cyclo::from_rational(m, BigRational::from_integer(BigInt::from(k)))
    }

    /// ζ_m^k, with k reduced mod m.
    pub fn root(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Cyclo::reduce(m, poly)
    }

    fn reduce(m: u64, poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(m);
        let deg = phi.len() - 1;
        let mut v = poly;
        if v.len() > deg {
            for i in (deg..v.len()).rev() {
                let c = std::mem::take(&mut v[i]);
                if !c.is_zero() {
                    // x^deg ≡ -Σ_{j<deg} phi[j] x^j (mod Φ_m), Φ monic.
                    for j in 0..deg {
                        let adj = &c * BigRational::from_integer(phi[j].clone());
                        v[i - deg + j] -= adj;
                    }
                }
            }
        }
        v.resize(deg, BigRational::zero());
        Cyclo { m, coeffs: v }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-expresses the value in Q(ζ_target); `target` must be a multiple of
    /// the current order. ζ_m maps to ζ_target^(target/m).
    pub fn promote(&self, target: u64) -> Cyclo {
        if target == self.m {
            return self.clone();
        }
        assert_eq!(target % self.m, 0, "promotion target must be a multiple");
        let step = (target / self.m) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[k * step] = c.clone();
            }
        }
        Cyclo::reduce(target, poly)
    }

    fn common_order(&self, other: &Cyclo) -> u64 {
        self.m.lcm(&other.m)
    }

    /// Complex conjugation ζ_m -> ζ_m^{-1}.
    pub fn conj(&self) -> Cyclo {
        let m = self.m as usize;
        let mut poly = vec![BigRational::zero(); m];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(m - k) % m] += c;
            }
        }
        Cyclo::reduce(self.m, poly)
    }

    /// Modulus squared `self * conj(self)`.
    pub fn abs_sq(&self) -> Cyclo {
        self * &self.conj()
    }

    /// The rational value when all non-constant coefficients vanish.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, q: &BigRational) -> Cyclo {
        Cyclo {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let m = self.common_order(other);
        self.promote(m).coeffs == other.promote(m).coeffs
    }
}

impl Eq for Cyclo {}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let m = self.common_order(rhs);
        let mut a = self.promote(m);
        let b = rhs.promote(m);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let m = self.common_order(rhs);
        let a = self.promote(m);
        let b = rhs.promote(m);
        let mut poly = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        Cyclo::reduce(m, poly)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl fmt::Display for Cyclo {
    /// Renders as `a0 + a1*z + a2*z^2 + ...` with `z` standing for ζ_m;
    /// zero terms are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && k > 0;
            if !unit_coeff {
                write!(f, "{}", mag)?;
            }
            if k > 0 {
                if !unit_coeff {
                    write!(f, "*")?;
                }
                write!(f, "z")?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloWire {
    m: u64,
    coeffs: Vec<String>,
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloWire {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = CycloWire::deserialize(d)?;
        let deg = cyclotomic_poly(wire.m).len() - 1;
        if wire.coeffs.len() != deg {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for order {}, got {}",
                deg,
                wire.m,
                wire.coeffs.len()
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| BigRational::from_str(s).map_err(D::Error::custom))
            .collect::<Result<_, _>>()?;
        Ok(Cyclo {
            m: wire.m,
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn phi_coeffs(m: u64) -> Vec<i64> {
        cyclotomic_poly(m)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(phi_coeffs(1), vec![-1, 1]); // x - 1
        assert_eq!(phi_coeffs(2), vec![1, 1]); // x + 1
        assert_eq!(phi_coeffs(3), vec![1, 1, 1]);
        assert_eq!(phi_coeffs(4), vec![1, 0, 1]); // x^2 + 1
        // Derived by dividing x^6 - 1 by Φ1·Φ2·Φ3: x^2 - x + 1.
        assert_eq!(phi_coeffs(6), vec![1, -1, 1]);
        assert_eq!(phi_coeffs(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_powers() {
        assert_eq!(Cyclo::root(2, 1), Cyclo::from_integer(2, -1));
        assert_eq!(Cyclo::root(3, 0), Cyclo::one(3));
        // ζ3^2 = -1 - ζ3 after reduction mod x^2 + x + 1.
        let z32 = Cyclo::root(3, 2);
        assert_eq!(z32.coeffs(), &[rat(-1), rat(-1)]);
        // Negative exponents reduce mod m.
        assert_eq!(Cyclo::root(3, -1), Cyclo::root(3, 2));
    }

    #[test]
    fn minimal_polynomial_identities() {
        let sum = &(&Cyclo::one(3) + &Cyclo::root(3, 1)) + &Cyclo::root(3, 2);
        assert!(sum.is_zero());
        assert_eq!(&Cyclo::root(4, 1) * &Cyclo::root(4, 1), Cyclo::from_integer(4, -1));
        // (1+ζ5)(1+ζ5^4) = 2 + ζ5 + ζ5^4, derived by expanding mod Φ5.
        let a = &Cyclo::one(5) + &Cyclo::root(5, 1);
        let b = &Cyclo::one(5) + &Cyclo::root(5, 4);
        let want = &(&Cyclo::from_integer(5, 2) + &Cyclo::root(5, 1)) + &Cyclo::root(5, 4);
        assert!((&(&a * &b) - &want).is_zero());
    }

    #[test]
    fn geometric_sums_vanish() {
        for m in [2u64, 3, 4, 5, 6, 8, 12] {
            let mut sum = Cyclo::zero(m);
            for k in 0..m {
                sum = &sum + &Cyclo::root(m, k as i64);
            }
            assert!(sum.is_zero(), "m={}", m);
        }
        assert_eq!(Cyclo::root(1, 0), Cyclo::one(1));
    }

    #[test]
    fn conjugation() {
        // ζ4^3 = -ζ4.
        assert_eq!(Cyclo::root(4, 1).conj(), -&Cyclo::root(4, 1));
        let r = Cyclo::from_rational(6, BigRational::new(BigInt::from(3), BigInt::from(7)));
        assert_eq!(r.conj(), r);
        assert_eq!(Cyclo::root(5, 2).conj().conj(), Cyclo::root(5, 2));
        // |1+ζ3|^2 = (1+ζ3)(1+ζ3^2) = 1.
        let v = &Cyclo::one(3) + &Cyclo::root(3, 1);
        assert_eq!(v.abs_sq(), Cyclo::one(3));
    }

    #[test]
    fn unit_modulus_of_roots() {
        for m in [2u64, 3, 4, 5, 6, 8, 12] {
            for k in 0..m {
                assert_eq!(Cyclo::root(m, k as i64).abs_sq(), Cyclo::one(m));
            }
        }
    }

    #[test]
    fn rational_detection() {
        assert_eq!(Cyclo::zero(5).as_rational(), Some(rat(0)));
        assert_eq!(Cyclo::root(2, 1).as_rational(), Some(rat(-1)));
        assert_eq!(Cyclo::root(3, 1).as_rational(), None);
    }

    #[test]
    fn promotion_consistency() {
        // ζ2 + ζ3 computed by auto-promotion equals ζ6^3 + ζ6^2.
        let lhs = &Cyclo::root(2, 1) + &Cyclo::root(3, 1);
        let rhs = &Cyclo::root(6, 3) + &Cyclo::root(6, 2);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.order(), 6);
    }

    #[test]
    fn display_and_serde() {
        let v = &Cyclo::from_integer(3, -1) - &Cyclo::root(3, 1);
        assert_eq!(v.to_string(), "-1 - z");
        assert_eq!(Cyclo::zero(4).to_string(), "0");
        let half = Cyclo::from_rational(4, BigRational::new(BigInt::from(1), BigInt::from(2)));
        let w = &half + &Cyclo::root(4, 1).scale(&rat(2));
        assert_eq!(w.to_string(), "1/2 + 2*z");
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"m":4,"coeffs":["1/2","2"]}"#);
        assert_eq!(serde_json::from_str::<Cyclo>(&json).unwrap(), w);
    }

    proptest::proptest! {
        #[test]
        fn ring_axioms(
            m_idx in 0usize..7,
            a in proptest::collection::vec(-5i64..=5, 4),
            b in proptest::collection::vec(-5i64..=5, 4),
            c in proptest::collection::vec(-5i64..=5, 4),
        ) {
            let m = [2u64, 3, 4, 5, 6, 8, 12][m_idx];
            let build = |v: &[i64]| {
                v.iter().enumerate().fold(Cyclo::zero(m), |acc, (k, &coef)| {
                    &acc + &Cyclo::root(m, k as i64).scale(&rat(coef))
                })
            };
            let (x, y, z) = (build(&a), build(&b), build(&c));
            proptest::prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            proptest::prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            proptest::prop_assert_eq!(&x + &y, &y + &x);
            proptest::prop_assert_eq!(&x * &y, &y * &x);
        }
    }
}
