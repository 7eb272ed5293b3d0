//! Finite abelian groups on dense encodings, used as module carriers.

use crate::{Error, Result};

/// Largest carrier that is tabulated.
pub const MAX_CARRIER: usize = 4096;

/// Mixed-radix coordinates: element `idx = sum d_j * prod_{i<j} moduli_i`,
/// addition is digitwise modulo `moduli_j`. Each digit generates a cyclic
/// direct summand, so the moduli are the orders of a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    moduli: Vec<u64>,
}

impl Basis {
    pub fn new(moduli: Vec<u64>) -> Self {
        let moduli = moduli.into_iter().filter(|&m| m > 1).collect();
        Basis { moduli }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn digits(&self, mut idx: u64) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let d = idx % m;
                idx /= m;
                d
            })
            .collect()
    }

    pub fn encode(&self, digits: &[u64]) -> u32 {
        let mut idx = 0u64;
        for (d, m) in digits.iter().zip(&self.moduli).rev() {
            idx = idx * m + d % m;
        }
        idx as u32
    }

    /// Encoding of the j-th basis element.
    pub fn unit(&self, j: usize) -> u32 {
        self.moduli[..j].iter().product::<u64>() as u32
    }

    pub fn concat(parts: &[&Basis]) -> Basis {
        Basis::new(parts.iter().flat_map(|b| b.moduli.iter().copied()).collect())
    }

    /// The prime `p` when every modulus is a power of the same prime.
    pub fn prime(&self) -> Option<u64> {
        let mut prime = None;
        for &m in &self.moduli {
            let p = smallest_prime_factor(m);
            let mut k = m;
            while k % p == 0 {
                k /= p;
            }
            if k != 1 || prime.is_some_and(|q| q != p) {
                return None;
            }
            prime = Some(p);
        }
        prime
    }

    pub fn exponent(&self) -> u64 {
        self.moduli.iter().copied().max().unwrap_or(1)
    }
}

pub fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A finite abelian group with tabulated addition.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    order: usize,
    zero: u32,
    add: Vec<u32>,
    neg: Vec<u32>,
    basis: Option<Basis>,
}

impl AbelianGroup {
    pub fn from_fn(
        order: usize,
        zero: u32,
        mut add: impl FnMut(u32, u32) -> u32,
        basis: Option<Basis>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("empty carrier".into()));
        }
        if order > MAX_CARRIER {
            return Err(Error::cap("carrier order", MAX_CARRIER as u64, order as u64));
        }
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = add(a as u32, b as u32);
            }
        }
        let mut neg = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == zero {
                    neg[a] = b as u32;
                    break;
                }
            }
            if neg[a] == u32::MAX {
                return Err(Error::Construction(format!("element {a} has no negative")));
            }
        }
        Ok(AbelianGroup {
            order,
            zero,
            add: table,
            neg,
            basis,
        })
    }

    /// Group on mixed-radix coordinates with digitwise addition.
    pub fn from_basis(basis: Basis) -> Result<Self> {
        let order = basis.order() as usize;
        let b = basis.clone();
        Self::from_fn(
            order,
            0,
            move |x, y| {
                let dx = b.digits(x as u64);
                let dy = b.digits(y as u64);
                let sum: Vec<u64> = dx.iter().zip(&dy).map(|(a, c)| a + c).collect();
                b.encode(&sum)
            },
            Some(basis),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn basis(&self) -> Option<&Basis> {
        self.basis.as_ref()
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn scalar(&self, k: u64, x: u32) -> u32 {
        let mut acc = self.zero;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn additive_order(&self, x: u32) -> u64 {
        let mut k = 1;
        let mut acc = x;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    /// Exponent of the group (lcm of element orders; all our groups are
    /// p-groups or small, so the max order of a basis element suffices when
    /// a basis is known).
    pub fn exponent(&self) -> u64 {
        if let Some(b) = &self.basis {
            return b.exponent();
        }
        let mut e = 1u64;
        for x in self.elements() {
            let o = self.additive_order(x);
            e = e / gcd(e, o) * o;
        }
        e
    }

    /// The subgroup on `members` (sorted) re-encoded as `0..members.len()`.
    pub fn restrict(&self, members: &[u32]) -> Result<AbelianGroup> {
        let local = local_index(self.order, members);
        let zero = local[self.zero as usize];
        if zero == u32::MAX {
            return Err(Error::InvalidInput("subset does not contain zero".into()));
        }
        let mut bad = false;
        let g = AbelianGroup::from_fn(
            members.len(),
            zero,
            |a, b| {
                let s = self.add(members[a as usize], members[b as usize]);
                let l = local[s as usize];
                if l == u32::MAX {
                    bad = true;
                    0
                } else {
                    l
                }
            },
            None,
        );
        if bad {
            return Err(Error::InvalidInput("subset is not a subgroup".into()));
        }
        g
    }

    pub fn is_subgroup(&self, members: &[u32]) -> bool {
        let local = local_index(self.order, members);
        if local[self.zero as usize] == u32::MAX {
            return false;
        }
        members.iter().all(|&a| {
            local[self.neg(a) as usize] != u32::MAX
                && members
                    .iter()
                    .all(|&b| local[self.add(a, b) as usize] != u32::MAX)
        })
    }
}

/// Inverse of a sorted member list: `local[x]` is the position of `x` or
/// `u32::MAX`.
pub fn local_index(order: usize, members: &[u32]) -> Vec<u32> {
    let mut local = vec![u32::MAX; order];
    for (i, &m) in members.iter().enumerate() {
        local[m as usize] = i as u32;
    }
    local
}

/// The factor group `big / small`, where `small <= big` are subgroups of
/// `group`. Cosets are represented by their smallest member.
#[derive(Clone, Debug)]
pub struct FactorGroup {
    pub group: AbelianGroup,
    /// Coset representative (global encoding) of each factor element.
    pub reps: Vec<u32>,
    /// For every element of `big`, its factor element; `u32::MAX` outside.
    pub class_of: Vec<u32>,
}

impl FactorGroup {
    pub fn new(group: &AbelianGroup, big: &[u32], small: &[u32]) -> Result<FactorGroup> {
        let mut class_of = vec![u32::MAX; group.order()];
        let mut reps = Vec::new();
        for &x in big {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &s in small {
                let y = group.add(x, s);
                if class_of[y as usize] != u32::MAX && class_of[y as usize] != c {
                    return Err(Error::Internal("cosets overlap".into()));
                }
                class_of[y as usize] = c;
            }
        }
        let zero = class_of[group.zero() as usize];
        let g = AbelianGroup::from_fn(
            reps.len(),
            zero,
            |a, b| class_of[group.add(reps[a as usize], reps[b as usize]) as usize],
            None,
        )?;
        Ok(FactorGroup {
            group: g,
            reps,
            class_of,
        })
    }
}
