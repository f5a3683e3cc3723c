use std::cmp::Ordering;

pub const MAX_VARS: usize = 8;

/// Exponent vector. The derived `Ord` is lexicographic with variable 0 largest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(idx: usize, e: u16) -> Self {
        let mut m = Self::one();
        m.0[idx] = e;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Self::one();
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    #[inline]
    pub fn exp(&self, v: usize) -> u16 {
        self.0[v]
    }

    #[inline]
    pub fn set_exp(&mut self, v: usize, e: u16) {
        self.0[v] = e;
    }

    pub fn exps(&self, n: usize) -> &[u16] {
        &self.0[..n]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i] + other.0[i];
        }
        Monomial(out)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u16; MAX_VARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; MAX_VARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].max(other.0[i]);
        }
        Monomial(out)
    }

    /// No variable occurs in both.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Pure power of a single variable, returning that variable.
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..MAX_VARS).filter(|&i| self.0[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.0[i] {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    DegRevLex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0[..nvars].cmp(&b.0[..nvars]),
            MonomialOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.0[..nvars].cmp(&b.0[..nvars])),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for i in (0..nvars).rev() {
                    if a.0[i] != b.0[i] {
                        return b.0[i].cmp(&a.0[i]);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_on_three_vars() {
        let m = |e: [u16; 3]| Monomial::from_exps(&e);
        // x*y^2 vs x^2*z: degrevlex prefers the one with smaller last exponent
        assert_eq!(MonomialOrder::DegRevLex.cmp(&m([1, 2, 0]), &m([2, 0, 1]), 3), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&m([1, 2, 0]), &m([2, 0, 1]), 3), Ordering::Less);
        assert_eq!(MonomialOrder::GrLex.cmp(&m([0, 0, 3]), &m([1, 0, 0]), 3), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = Monomial::from_exps(&[2, 1]);
        let b = Monomial::from_exps(&[1, 3]);
        assert_eq!(a.lcm(&b), Monomial::from_exps(&[2, 3]));
        assert!(a.div(&b).is_none());
        assert_eq!(a.div(&Monomial::from_exps(&[1, 1])), Some(Monomial::from_exps(&[1, 0])));
        assert!(Monomial::from_exps(&[1, 0]).is_coprime(&Monomial::from_exps(&[0, 4])));
    }
}
