use std::cmp::Ordering;
use std::fmt;

/// Number of variable slots.
pub const NV: usize = 21;
/// v = q_F^{1/2}
pub const V: usize = 0;
/// u = mu(varpi)
pub const U: usize = 1;
/// q^{-s}
pub const XS: usize = 20;
pub const MAX_X: usize = 6;
pub const MAX_Y: usize = 6;
pub const MAX_Z: usize = 6;

/// Slot of x_i (1-based).
pub fn x(i: usize) -> usize {
    assert!((1..=MAX_X).contains(&i), "x index out of range");
    1 + i
}

/// Slot of y_j (1-based).
pub fn y(j: usize) -> usize {
    assert!((1..=MAX_Y).contains(&j), "y index out of range");
    1 + MAX_X + j
}

/// Slot of z_k (1-based).
pub fn z(k: usize) -> usize {
    assert!((1..=MAX_Z).contains(&k), "z index out of range");
    1 + MAX_X + MAX_Y + k
}

pub fn slot_name(s: usize) -> String {
    match s {
        V => "v".into(),
        U => "u".into(),
        XS => "X".into(),
        s if s < 2 + MAX_X => format!("x{}", s - 1),
        s if s < 2 + MAX_X + MAX_Y => format!("y{}", s - 1 - MAX_X),
        s => format!("z{}", s - 1 - MAX_X - MAX_Y),
    }
}

pub fn slot_of_name(name: &str) -> Option<usize> {
    match name {
        "v" => return Some(V),
        "u" => return Some(U),
        "X" => return Some(XS),
        _ => {}
    }
    let (head, tail) = name.split_at(1);
    let i: usize = tail.parse().ok()?;
    match head {
        "x" if (1..=MAX_X).contains(&i) => Some(x(i)),
        "y" if (1..=MAX_Y).contains(&i) => Some(y(i)),
        "z" if (1..=MAX_Z).contains(&i) => Some(z(i)),
        _ => None,
    }
}

/// Laurent monomial exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [i16; NV]);

impl Mono {
    pub fn one() -> Mono {
        Mono([0; NV])
    }

    pub fn var(s: usize, e: i16) -> Mono {
        let mut m = [0; NV];
        m[s] = e;
        Mono(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Mono(r)
    }

    pub fn div(&self, o: &Mono) -> Mono {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b).expect("exponent overflow");
        }
        Mono(r)
    }

    pub fn inv(&self) -> Mono {
        let mut r = self.0;
        for a in r.iter_mut() {
            *a = -*a;
        }
        Mono(r)
    }

    pub fn pow(&self, k: i32) -> Mono {
        let mut r = [0i16; NV];
        for (a, b) in r.iter_mut().zip(self.0.iter()) {
            *a = i16::try_from(*b as i32 * k).expect("exponent overflow");
        }
        Mono(r)
    }

    /// componentwise min
    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Mono(r)
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn get(&self, s: usize) -> i16 {
        self.0[s]
    }

    pub fn with(&self, s: usize, e: i16) -> Mono {
        let mut r = self.0;
        r[s] = e;
        Mono(r)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..NV).filter(move |&s| self.0[s] != 0)
    }
}

/// Graded lexicographic order over the slot order.
impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in self.support() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let e = self.0[s];
            if e == 1 {
                write!(f, "{}", slot_name(s))?;
            } else {
                write!(f, "{}^{}", slot_name(s), e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in 0..NV {
            assert_eq!(slot_of_name(&slot_name(s)), Some(s));
        }
        assert_eq!(slot_of_name("x0"), None);
        assert_eq!(slot_of_name("w1"), None);
    }

    #[test]
    fn grlex() {
        let a = Mono::var(x(1), 2);
        let b = Mono::var(V, 1).mul(&Mono::var(x(2), 1));
        let c = Mono::var(V, 1);
        assert!(a > c);
        assert!(b > a);
        assert!(Mono::var(V, 1) > Mono::var(U, 1));
        assert!(Mono::one() > Mono::var(V, -1));
    }
}
