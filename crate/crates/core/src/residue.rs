//! Residue fields `F_q[T]/P` realized as canonical fields `F_{q^deg P}`.

use crate::error::{Error, Result};
use crate::factor::{factor, is_irreducible};
use crate::field::{FieldCtx, FieldElem, Fq};
use crate::poly::Poly;
use crate::ratfn::RationalFn;

/// The canonical `F_{q^d}` together with the embedding of `F_q` and the
/// image of `T`.
#[derive(Clone, Debug)]
pub struct ResidueField {
    prime: Poly,
    big: FieldCtx,
    embed: Vec<Fq>,
    t_image: Fq,
}

fn smallest_root(f: &Poly) -> Fq {
    factor(f)
        .unwrap()
        .parts
        .iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| g.ctx().neg(g.coeff(0)))
        .min()
        .expect("polynomial has no root in the target field")
}

impl ResidueField {
    pub fn new(prime: &Poly) -> Result<ResidueField> {
        if prime.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !prime.is_monic() || !is_irreducible(prime)? {
            return Err(Error::NotIrreducible(prime.to_string()));
        }
        let base = prime.ctx();
        let d = prime.deg() as u32;
        let big = FieldCtx::new(base.p() as u64, base.k() * d)?;
        let embed = match base.modulus() {
            None => (0..base.q()).collect(),
            Some(m) => {
                let mp = Poly::from_coeffs(&big, m.to_vec());
                let alpha = smallest_root(&mp);
                let powers: Vec<Fq> = (0..base.k()).map(|i| big.pow(alpha, i as u64)).collect();
                (0..base.q())
                    .map(|a| {
                        base.digits(a)
                            .iter()
                            .zip(&powers)
                            .fold(0, |acc, (&c, &w)| big.add(acc, big.mul(c, w)))
                    })
                    .collect()
            }
        };
        let mut rf = ResidueField {
            prime: prime.clone(),
            big,
            embed,
            t_image: 0,
        };
        let lifted = rf.embed_poly(prime);
        rf.t_image = smallest_root(&lifted);
        Ok(rf)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.big
    }

    pub fn prime(&self) -> &Poly {
        &self.prime
    }

    pub fn t_image(&self) -> Fq {
        self.t_image
    }

    pub fn embed(&self, a: Fq) -> Fq {
        self.embed[a as usize]
    }

    pub fn embed_poly(&self, f: &Poly) -> Poly {
        Poly::from_coeffs(
            &self.big,
            f.coeffs().iter().map(|&c| self.embed(c)).collect(),
        )
    }

    /// Image of a polynomial under `F_q[T] -> F_q[T]/P`.
    pub fn reduce(&self, f: &Poly) -> Fq {
        let b = &self.big;
        f.coeffs()
            .iter()
            .rev()
            .fold(0, |acc, &c| b.add(b.mul(acc, self.t_image), self.embed(c)))
    }

    pub fn eval(&self, d: &RationalFn) -> Result<Fq> {
        let den = self.reduce(d.den());
        if den == 0 {
            return Err(Error::PoleAtPrime(self.prime.to_string()));
        }
        self.big.div(self.reduce(d.num()), den)
    }
}

pub fn residue_field(prime: &Poly) -> Result<ResidueField> {
    ResidueField::new(prime)
}

/// Reduction of `d` modulo the prime `P`, as an element of the residue field.
pub fn eval_mod(d: &RationalFn, prime: &Poly) -> Result<FieldElem> {
    let rf = ResidueField::new(prime)?;
    let v = rf.eval(d)?;
    Ok(rf.field().elem(v))
}
