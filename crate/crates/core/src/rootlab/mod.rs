//! Multiprecision root finding and real/non-real classification.
//!
//! Multiplicities come from exact square-free decomposition, never from
//! numeric clustering; the numeric stage only ever solves square-free
//! factors. Conjugate symmetry is enforced structurally by averaging
//! paired roots, and a root within `τ_real·(1+|re|)` of the real axis is
//! snapped onto it. The Sturm oracle in [`crate::exactalg`] arbitrates
//! the classification in the test suites.

mod aberth;
pub mod mpfloat;

pub use aberth::{residual_scale, roots_of_squarefree, MpPoly};
pub use mpfloat::{eval_poly, eval_ratfun, MpComplex, MpReal};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{BigRational, ExactPoly};

pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Working dyadic scale for a requested precision: double the bits, so
/// polishing noise sits far below everything the classification needs.
pub fn scale_for(precision_bits: u32) -> u32 {
    precision_bits.max(32) * 2
}

/// Default real-axis snapping tolerance τ_real = 1e-20.
pub fn default_tau_real() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10).pow(20))
}

/// Classification of one distinct root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootClass {
    Real,
    /// Non-real root; `partner` indexes the conjugate entry.
    ConjugatePair { partner: usize },
}

#[derive(Clone, Debug)]
pub struct RootEntry {
    pub value: MpComplex,
    pub multiplicity: u32,
    pub class: RootClass,
}

/// All distinct complex roots of a real polynomial, with multiplicities
/// summing to the source degree and conjugate closure by construction.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub entries: Vec<RootEntry>,
    pub source_degree: usize,
}

impl RootSet {
    pub fn empty() -> Self {
        RootSet {
            entries: Vec::new(),
            source_degree: 0,
        }
    }

    /// `(n_real_distinct, n_nonreal_distinct)`, ignoring multiplicity.
    pub fn classify_and_count(&self) -> (usize, usize) {
        let real = self
            .entries
            .iter()
            .filter(|e| e.class == RootClass::Real)
            .count();
        (real, self.entries.len() - real)
    }

    pub fn real_distinct(&self) -> usize {
        self.classify_and_count().0
    }

    pub fn nonreal_distinct(&self) -> usize {
        self.classify_and_count().1
    }

    /// Structural invariant: every conjugate-pair entry has a partner
    /// with exactly conjugate value and equal multiplicity, real entries
    /// have exactly zero imaginary part, and multiplicities sum to the
    /// source degree.
    pub fn check_structure(&self) -> bool {
        let mut mult_sum = 0usize;
        for (i, e) in self.entries.iter().enumerate() {
            mult_sum += e.multiplicity as usize;
            match &e.class {
                RootClass::Real => {
                    if !e.value.im.is_zero() {
                        return false;
                    }
                }
                RootClass::ConjugatePair { partner } => {
                    let Some(p) = self.entries.get(*partner) else {
                        return false;
                    };
                    let RootClass::ConjugatePair { partner: back } = &p.class else {
                        return false;
                    };
                    if *back != i
                        || p.multiplicity != e.multiplicity
                        || p.value != e.value.conj()
                        || e.value.im.is_zero()
                    {
                        return false;
                    }
                }
            }
        }
        mult_sum == self.source_degree
    }
}

/// Find all complex roots of `p` with multiplicities: exact square-free
/// split, Aberth–Ehrlich per factor, Newton polishing at full scale,
/// snap-to-axis and conjugate averaging.
pub fn find_roots(p: &ExactPoly, precision_bits: u32) -> Result<RootSet> {
    find_roots_with_tau(p, precision_bits, &default_tau_real())
}

pub fn find_roots_with_tau(
    p: &ExactPoly,
    precision_bits: u32,
    tau_real: &BigRational,
) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Err(Error::precondition("find_roots requires degree >= 1"));
    }
    let scale = scale_for(precision_bits);
    let tau = MpReal::from_rational(tau_real, scale);
    let one = MpReal::from_i64(1, scale);

    let mut entries: Vec<RootEntry> = Vec::new();
    for factor in p.squarefree_decompose()? {
        let roots = roots_of_squarefree(&factor.factor, precision_bits, scale)?;
        let mut real_part: Vec<MpComplex> = Vec::new();
        let mut upper: Vec<MpComplex> = Vec::new();
        let mut lower: Vec<MpComplex> = Vec::new();
        for z in roots {
            let snap_band = tau.mul(&one.add(&z.re.abs()));
            if z.im.abs().cmp_val(&snap_band) != std::cmp::Ordering::Greater {
                real_part.push(MpComplex::new(z.re.clone(), MpReal::zero(scale)));
            } else if z.im.is_negative() {
                lower.push(z);
            } else {
                upper.push(z);
            }
        }
        if upper.len() != lower.len() {
            return Err(Error::NonConvergence {
                worst_residual: f64::NAN,
            });
        }
        for re_root in real_part {
            entries.push(RootEntry {
                value: re_root,
                multiplicity: factor.multiplicity,
                class: RootClass::Real,
            });
        }
        // Pair each upper root with its nearest lower conjugate and
        // average to enforce exact symmetry.
        let mut used = vec![false; lower.len()];
        for u in upper {
            let conj_u = u.conj();
            let mut best: Option<(usize, MpReal)> = None;
            for (j, l) in lower.iter().enumerate() {
                if used[j] {
                    continue;
                }
                let d = conj_u.sub(l).abs();
                if best
                    .as_ref()
                    .map(|(_, bd)| d.cmp_val(bd) == std::cmp::Ordering::Less)
                    .unwrap_or(true)
                {
                    best = Some((j, d));
                }
            }
            let (j, _) = best.ok_or(Error::NonConvergence {
                worst_residual: f64::NAN,
            })?;
            used[j] = true;
            let half = MpReal::from_rational(&BigRational::new(1.into(), 2.into()), scale);
            let avg = u.add(&lower[j].conj()).scale_real(&half);
            let k = entries.len();
            entries.push(RootEntry {
                value: avg.clone(),
                multiplicity: factor.multiplicity,
                class: RootClass::ConjugatePair { partner: k + 1 },
            });
            entries.push(RootEntry {
                value: avg.conj(),
                multiplicity: factor.multiplicity,
                class: RootClass::ConjugatePair { partner: k },
            });
        }
    }

    // Deterministic ordering with partner indices remapped.
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by(|&a, &b| {
        let (ea, eb) = (&entries[a], &entries[b]);
        ea.value
            .re
            .mant()
            .cmp(eb.value.re.mant())
            .then_with(|| ea.value.im.mant().cmp(eb.value.im.mant()))
    });
    let mut new_index = vec![0usize; entries.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let mut sorted: Vec<RootEntry> = Vec::with_capacity(entries.len());
    for &old in &order {
        let mut e = entries[old].clone();
        if let RootClass::ConjugatePair { partner } = &mut e.class {
            *partner = new_index[*partner];
        }
        sorted.push(e);
    }

    let set = RootSet {
        entries: sorted,
        source_degree: p.deg_or_zero(),
    };
    debug_assert!(set.check_structure());
    Ok(set)
}

/// Remove from `target` every root it shares with `f_num`, to full
/// multiplicity: divide by `gcd(target, f_num^∞)`.
pub fn exclude_zeros_of(target: &ExactPoly, f_num: &ExactPoly) -> Result<ExactPoly> {
    if target.is_zero() || f_num.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = target.clone();
    loop {
        let g = ExactPoly::gcd(&out, f_num);
        if g.is_constant() {
            return Ok(out);
        }
        out = out.div_exact(&g).expect("gcd divides");
    }
}
