//! Declarative ansatz construction for cover solving.
//!
//! Fiber factors are described as Moebius orbits of unknown seed points.
//! Expanding the orbit polynomial symbolically in the seed and re-expressing
//! its coefficients through a minimal set of fresh unknowns (linear-span
//! reduction against the leading coefficient) keeps the matching system
//! solvable inside quadratic fields even when the seed itself has higher
//! degree. Unknowns derived from a shared seed get coupling constraints by
//! eliminating the seed with a resultant.

use num_traits::{One, Zero};

use crate::algebra::linalg::{solve_linear, LinearSolution};
use crate::algebra::poly::Poly;
use crate::algebra::rational::Rational;
use crate::algebra::QuadExt;
use crate::schwarzian::MoebiusMap;

use super::mpoly::{MPoly, ZPoly};
use super::resultant::resultant;

/// Handle to a declared block factor.
#[derive(Clone, Copy, Debug)]
pub struct BlockRef(usize);

/// Handle to a declared scalar unknown.
#[derive(Clone, Copy, Debug)]
pub struct VarRef(usize);

enum BlockData {
    /// Orbit factor: monic in z, each lower coefficient an affine combo
    /// `const + sum (var, coeff)`.
    Reduced(Vec<(Rational, Vec<(usize, Rational)>)>),
    /// Free-coefficient factor: explicit variable per coefficient, constant
    /// term 1.
    FreeMonicAtZero(Vec<usize>),
}

/// Builds ansatz factors and tracks unknowns and seed definitions.
pub struct AnsatzBuilder {
    names: Vec<String>,
    blocks: Vec<BlockData>,
    /// (seed name, unknown index, numerator, denominator): unknown = N/D(x).
    seed_defs: Vec<(String, usize, Poly, Poly)>,
}

impl Default for AnsatzBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl AnsatzBuilder {
    pub fn new() -> Self {
        AnsatzBuilder { names: vec![], blocks: vec![], seed_defs: vec![] }
    }

    fn fresh(&mut self, name: String) -> usize {
        assert!(!self.names.contains(&name), "duplicate unknown {name}");
        self.names.push(name);
        self.names.len() - 1
    }

    /// Declares a plain scalar unknown.
    pub fn scalar(&mut self, name: &str) -> VarRef {
        VarRef(self.fresh(name.to_string()))
    }

    /// Declares the factor whose roots are the orbit
    /// `{ h(x), g^step(h(x)), g^(2 step)(h(x)), ... }` of an unknown seed x
    /// (`size` elements). Fresh unknowns named `prefix0, prefix1, ...` are
    /// introduced as needed.
    pub fn orbit_block(
        &mut self,
        seed: &str,
        generator: &MoebiusMap,
        step: u32,
        size: u32,
        pre: Option<&MoebiusMap>,
        prefix: &str,
    ) -> BlockRef {
        // matrices of g^(k*step) o h
        let gs = moebius_pow(generator, step);
        let mut maps = vec![];
        let mut cur = pre.cloned().unwrap_or_else(MoebiusMap::identity);
        for _ in 0..size {
            maps.push(cur.clone());
            cur = gs.compose(&cur);
        }
        // orbit polynomial in (z, x): product over k of ((c x + d) z - (a x + b))
        // tracked as z-coefficients in Q[x]
        let mut zc: Vec<Poly> = vec![Poly::one()];
        for m in &maps {
            let lo = Poly::new(vec![m.b.clone(), m.a.clone()]); // a x + b
            let hi = Poly::new(vec![m.d.clone(), m.c.clone()]); // c x + d
            let mut next = vec![Poly::zero(); zc.len() + 1];
            for (i, coeff) in zc.iter().enumerate() {
                next[i + 1] = &next[i + 1] + &(coeff * &hi);
                next[i] = &next[i] - &(coeff * &lo);
            }
            zc = next;
        }
        let lead = zc.last().unwrap().clone();
        assert!(
            zc.iter().all(|p| p.is_rational()),
            "orbit generator must have rational entries"
        );
        // reduce: express each coefficient over the span of {lead, extras}
        let mut basis: Vec<Poly> = vec![lead.clone()];
        let mut basis_vars: Vec<usize> = vec![usize::MAX]; // slot 0 = leading
        let n = zc.len() - 1;
        let mut combos: Vec<(Rational, Vec<(usize, Rational)>)> =
            vec![(Rational::zero(), vec![]); n];
        // scan from the highest coefficient down so fresh unknowns attach to
        // the most significant slot
        for j in (0..n).rev() {
            let cj = &zc[j];
            if cj.is_zero() {
                continue;
            }
            match express_in_span(cj, &basis) {
                Some(lam) => {
                    let mut combo = (Rational::zero(), vec![]);
                    for (i, l) in lam.iter().enumerate() {
                        if l.is_zero() {
                            continue;
                        }
                        if i == 0 {
                            combo.0 = l.clone();
                        } else {
                            combo.1.push((basis_vars[i], l.clone()));
                        }
                    }
                    combos[j] = combo;
                }
                None => {
                    let var = self.fresh(format!("{prefix}{}", basis.len() - 1));
                    self.seed_defs
                        .push((seed.to_string(), var, cj.clone(), lead.clone()));
                    basis.push(cj.clone());
                    basis_vars.push(var);
                    combos[j] = (Rational::zero(), vec![(var, Rational::one())]);
                }
            }
        }
        self.blocks.push(BlockData::Reduced(combos));
        BlockRef(self.blocks.len() - 1)
    }

    /// Declares a degree-`deg` factor `1 + c_1 x + ... + c_deg x^deg` with
    /// free unknown coefficients named `prefix1..`.
    pub fn free_block(&mut self, deg: u32, prefix: &str) -> BlockRef {
        let vars: Vec<usize> = (1..=deg)
            .map(|i| self.fresh(format!("{prefix}{i}")))
            .collect();
        self.blocks.push(BlockData::FreeMonicAtZero(vars));
        BlockRef(self.blocks.len() - 1)
    }

    /// Materialises everything once the unknown count is final.
    pub fn finish(self) -> BuiltAnsatz {
        let nvars = self.names.len();
        let blocks: Vec<ZPoly> = self
            .blocks
            .iter()
            .map(|b| match b {
                BlockData::Reduced(combos) => {
                    let mut coeffs: Vec<MPoly> = combos
                        .iter()
                        .map(|(konst, terms)| {
                            let mut p = MPoly::constant(nvars, konst.clone());
                            for (v, c) in terms {
                                p = &p + &MPoly::var(nvars, *v).scale(c);
                            }
                            p
                        })
                        .collect();
                    coeffs.push(MPoly::one(nvars));
                    ZPoly { coeffs }
                }
                BlockData::FreeMonicAtZero(vars) => {
                    let mut coeffs = vec![MPoly::one(nvars)];
                    coeffs.extend(vars.iter().map(|&v| MPoly::var(nvars, v)));
                    ZPoly { coeffs }
                }
            })
            .collect();

        // couplings: eliminate the shared seed between each pair of defs
        let mut couplings = vec![];
        for i in 0..self.seed_defs.len() {
            for j in (i + 1)..self.seed_defs.len() {
                let (s1, v1, n1, d1) = &self.seed_defs[i];
                let (s2, v2, n2, d2) = &self.seed_defs[j];
                if s1 != s2 {
                    continue;
                }
                // f = N(x) - t D(x) in scratch space: vars 0..nvars plus x
                let xvar = nvars;
                let lift = |p: &Poly| MPoly::from_univariate(nvars + 1, xvar, p);
                let f1 = &lift(n1) - &(&MPoly::var(nvars + 1, *v1) * &lift(d1));
                let f2 = &lift(n2) - &(&MPoly::var(nvars + 1, *v2) * &lift(d2));
                let r = resultant(&f1, &f2, xvar).primitive();
                if r.is_zero() || r.is_constant() {
                    continue;
                }
                couplings.push(shrink_vars(&r, nvars));
            }
        }
        BuiltAnsatz { nvars, names: self.names, blocks, couplings }
    }
}

/// Finished ansatz context: unknown names, block factors and coupling
/// constraints.
pub struct BuiltAnsatz {
    pub nvars: usize,
    pub names: Vec<String>,
    blocks: Vec<ZPoly>,
    pub couplings: Vec<MPoly>,
}

impl BuiltAnsatz {
    pub fn block(&self, b: BlockRef) -> &ZPoly {
        &self.blocks[b.0]
    }

    pub fn var(&self, v: VarRef) -> MPoly {
        MPoly::var(self.nvars, v.0)
    }

    pub fn constant(&self, c: Rational) -> MPoly {
        MPoly::constant(self.nvars, c)
    }

    /// Fixed polynomial factor with integer coefficients.
    pub fn fixed(&self, cs: &[i64]) -> ZPoly {
        ZPoly::from_ints(self.nvars, cs)
    }
}

/// Solves `target = sum lambda_i basis_i` over Q; `None` if not in the span.
fn express_in_span(target: &Poly, basis: &[Poly]) -> Option<Vec<Rational>> {
    let deg = basis
        .iter()
        .chain(std::iter::once(target))
        .map(|p| if p.is_zero() { 0 } else { p.degree() })
        .max()
        .unwrap();
    let mut rows = vec![];
    for k in 0..=deg {
        let coeffs: Vec<QuadExt> = basis.iter().map(|b| b.coeff(k)).collect();
        rows.push((coeffs, target.coeff(k)));
    }
    match solve_linear(&rows, basis.len()) {
        LinearSolution::Unique(lam) => Some(
            lam.into_iter()
                .map(|l| l.as_rational().expect("rational combo").clone())
                .collect(),
        ),
        LinearSolution::Underdetermined(_) => {
            // basis stays independent by construction
            unreachable!("dependent reduction basis")
        }
        LinearSolution::Inconsistent => None,
    }
}

fn moebius_pow(g: &MoebiusMap, e: u32) -> MoebiusMap {
    let mut acc = MoebiusMap::identity();
    for _ in 0..e {
        acc = acc.compose(g);
    }
    acc
}

/// Drops trailing always-zero exponents, re-embedding into `nvars` space.
fn shrink_vars(p: &MPoly, nvars: usize) -> MPoly {
    let terms = p
        .terms()
        .map(|(m, c)| {
            assert!(m[nvars..].iter().all(|&e| e == 0), "seed variable survived");
            (m[..nvars].to_vec(), c.clone())
        })
        .collect();
    MPoly::from_terms(nvars, terms)
}
