use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::numtheory::{divisors, gcd, moebius};

use super::field::FiniteField;
use super::group::{GroupElement, GroupSpec};
use super::AlgebraError;

/// A coefficient ring for polynomial subset sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zn { n: u64 },
    Fq(FiniteField),
}

/// The ambient object `R` (or `G`): a ring, or a bare abelian group where only
/// `f = x` makes sense. Elements are addressed by index in the additive group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    kind: Kind,
    group: GroupSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Kind {
    Ring(RingSpec),
    Group,
}

impl Structure {
    pub fn zn(n: u64) -> Result<Self, AlgebraError> {
        if n < 2 {
            return Err(AlgebraError::InvalidGroup(format!("Z_{n}: modulus must be at least 2")));
        }
        Ok(Self { kind: Kind::Ring(RingSpec::Zn { n }), group: GroupSpec::cyclic(n)? })
    }

    pub fn fq(field: FiniteField) -> Self {
        let group = field.additive_group().clone();
        Self { kind: Kind::Ring(RingSpec::Fq(field)), group }
    }

    pub fn abelian(group: GroupSpec) -> Self {
        Self { kind: Kind::Group, group }
    }

    pub fn ring(&self) -> Option<&RingSpec> {
        match &self.kind {
            Kind::Ring(r) => Some(r),
            Kind::Group => None,
        }
    }

    pub fn field(&self) -> Option<&FiniteField> {
        match &self.kind {
            Kind::Ring(RingSpec::Fq(f)) => Some(f),
            _ => None,
        }
    }

    /// `Some(n)` for `Z_n`.
    pub fn zn_modulus(&self) -> Option<u64> {
        match &self.kind {
            Kind::Ring(RingSpec::Zn { n }) => Some(*n),
            _ => None,
        }
    }

    /// The additive group.
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.group.size()
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Characters take values in the `e`-th roots of unity for this `e`:
    /// `e(G)` for groups and `Z_n`, `p` for `F_q`.
    pub fn pairing_modulus(&self) -> u64 {
        match self.field() {
            Some(f) => f.characteristic(),
            None => self.group.exponent(),
        }
    }

    /// Phase numerator of `ψ_c(g)` modulo [`pairing_modulus`](Self::pairing_modulus).
    /// `F_q` uses `Tr(c·g)`; everything else the standard pairing of cyclic
    /// factors.
    pub fn pairing(&self, c: usize, g: usize) -> u64 {
        match self.field() {
            Some(f) => f.trace_product(c, g),
            None => self.group.pairing(c, g),
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.group.add(a, b)
    }

    /// Ring product. Panics on a bare group.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Ring(RingSpec::Zn { n }) => (a as u128 * b as u128 % *n as u128) as usize,
            Kind::Ring(RingSpec::Fq(f)) => f.mul(a, b),
            Kind::Group => panic!("multiplication on a bare abelian group"),
        }
    }

    /// Parse an element in the text syntax: a decimal residue for `Z_n`,
    /// comma-separated coefficients `c0,c1,…` for `F_q` (missing trailing
    /// coefficients are zero), comma-separated residues for groups.
    pub fn parse_element(&self, text: &str) -> Result<usize, AlgebraError> {
        let nums = parse_u64_list(text, ',')?;
        match &self.kind {
            Kind::Ring(RingSpec::Zn { n }) => match nums.as_slice() {
                [v] if v < n => Ok(*v as usize),
                [v] => Err(AlgebraError::OutOfRange(format!("{v} is not below {n}"))),
                _ => Err(AlgebraError::Parse(format!("Z_{n} element must be one integer: {text:?}"))),
            },
            Kind::Ring(RingSpec::Fq(f)) => {
                if nums.len() > f.degree() {
                    return Err(AlgebraError::Parse(format!(
                        "F_q element has more than {} coefficients: {text:?}",
                        f.degree()
                    )));
                }
                if let Some(c) = nums.iter().find(|&&c| c >= f.characteristic()) {
                    return Err(AlgebraError::OutOfRange(format!(
                        "coefficient {c} not below {}",
                        f.characteristic()
                    )));
                }
                Ok(f.from_coeffs(&nums))
            }
            Kind::Group => self.group.encode(&GroupElement(nums)),
        }
    }

    pub fn format_element(&self, idx: usize) -> String {
        match &self.kind {
            Kind::Ring(RingSpec::Zn { .. }) => idx.to_string(),
            _ => self.group.decode(idx).to_string(),
        }
    }

    /// Parse a polynomial coefficient. For `F_q` either a base-`p` integer
    /// (`c_0` least significant, so `0..p` are the constants) or a
    /// colon-separated coefficient vector `c0:c1:…`.
    pub fn parse_coefficient(&self, text: &str) -> Result<usize, AlgebraError> {
        match &self.kind {
            Kind::Ring(RingSpec::Fq(_)) if text.contains(':') => {
                self.parse_element(&text.replace(':', ","))
            }
            Kind::Ring(RingSpec::Fq(f)) => {
                let v = parse_u64(text)?;
                if v >= f.order() {
                    return Err(AlgebraError::OutOfRange(format!("{v} is not below {}", f.order())));
                }
                Ok(f.from_int(v))
            }
            Kind::Ring(RingSpec::Zn { .. }) => self.parse_element(text),
            Kind::Group => Err(AlgebraError::NotARing),
        }
    }

    /// Short textual description: `zn:12`, `fq:3,2,[1,0,1]`, `abelian:2,2,3`.
    pub fn describe(&self) -> String {
        match &self.kind {
            Kind::Ring(RingSpec::Zn { n }) => format!("zn:{n}"),
            Kind::Ring(RingSpec::Fq(f)) => {
                let m: Vec<String> = f.modulus().iter().map(u64::to_string).collect();
                format!("fq:{},{},[{}]", f.characteristic(), f.degree(), m.join(","))
            }
            Kind::Group => format!("abelian:{}", self.group),
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

pub(crate) fn parse_u64(text: &str) -> Result<u64, AlgebraError> {
    text.trim()
        .parse::<u64>()
        .map_err(|_| AlgebraError::Parse(format!("not a nonnegative integer: {text:?}")))
}

pub(crate) fn parse_u64_list(text: &str, sep: char) -> Result<Vec<u64>, AlgebraError> {
    text.split(sep).map(parse_u64).collect()
}

/// `f(x) = a_0 + a_1 x + ⋯ + a_d x^d` over a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySpec {
    /// Coefficient indices, trailing zeros stripped (at least one entry).
    coeffs: Vec<usize>,
    /// `gcd(a_1, …, a_d, n)` for `Z_n`.
    content: Option<u64>,
    /// For `F_q`: whether `p | d`.
    degree_divisible_by_p: Option<bool>,
}

impl PolySpec {
    pub fn new(s: &Structure, coeffs: Vec<usize>) -> Result<Self, AlgebraError> {
        let ring = s.ring().ok_or(AlgebraError::NotARing)?;
        if coeffs.is_empty() {
            return Err(AlgebraError::Parse("polynomial needs at least one coefficient".into()));
        }
        if let Some(&a) = coeffs.iter().find(|&&a| a >= s.size()) {
            return Err(AlgebraError::OutOfRange(format!("coefficient index {a}")));
        }
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let d = coeffs.len() - 1;
        let (content, degree_divisible_by_p) = match ring {
            RingSpec::Zn { n } => {
                let g = coeffs[1..].iter().fold(*n, |acc, &a| gcd(acc, a as u64));
                (Some(g), None)
            }
            RingSpec::Fq(f) => (None, Some((d as u64).is_multiple_of(f.characteristic()))),
        };
        Ok(Self { coeffs, content, degree_divisible_by_p })
    }

    pub fn identity(s: &Structure) -> Result<Self, AlgebraError> {
        let one = match s.ring().ok_or(AlgebraError::NotARing)? {
            RingSpec::Zn { .. } => 1,
            RingSpec::Fq(f) => f.from_int(1),
        };
        Self::new(s, vec![0, one])
    }

    /// `x^d`.
    pub fn monomial(s: &Structure, d: usize) -> Result<Self, AlgebraError> {
        let one = Self::identity(s)?.coeffs[1];
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = one;
        Self::new(s, coeffs)
    }

    /// Parse `a0,a1,…,ad`.
    pub fn parse(s: &Structure, text: &str) -> Result<Self, AlgebraError> {
        let coeffs = text
            .split(',')
            .map(|c| s.parse_coefficient(c.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(s, coeffs)
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn content(&self) -> Option<u64> {
        self.content
    }

    pub fn degree_divisible_by_p(&self) -> Option<bool> {
        self.degree_divisible_by_p
    }

    /// `f = x` exactly.
    pub fn is_identity(&self, s: &Structure) -> bool {
        Self::identity(s).map(|id| id.coeffs == self.coeffs).unwrap_or(false)
    }

    /// Horner evaluation.
    pub fn eval(&self, s: &Structure, x: usize) -> usize {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &a| s.add(s.mul(acc, x), a))
    }

    pub fn describe(&self, s: &Structure) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|&a| match s.field() {
                Some(f) if f.degree() > 1 => {
                    let c: Vec<String> = f.coeffs(a).iter().map(u64::to_string).collect();
                    c.join(":")
                }
                _ => a.to_string(),
            })
            .collect();
        parts.join(",")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DomainForm {
    Full,
    List,
    Complement,
}

/// `D ⊆ R`, given explicitly or as the complement of a list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DomainSpec {
    form: DomainForm,
    /// Members of `D`, ascending.
    members: Vec<usize>,
    /// `R \ D`, ascending.
    excluded: Vec<usize>,
}

impl DomainSpec {
    pub fn full(s: &Structure) -> Self {
        Self { form: DomainForm::Full, members: (0..s.size()).collect(), excluded: Vec::new() }
    }

    pub fn list(s: &Structure, elements: Vec<usize>) -> Result<Self, AlgebraError> {
        let set = Self::checked_set(s, elements)?;
        let excluded = complement_of(s.size(), &set);
        Ok(Self { form: DomainForm::List, members: set, excluded })
    }

    pub fn complement(s: &Structure, excluded: Vec<usize>) -> Result<Self, AlgebraError> {
        let set = Self::checked_set(s, excluded)?;
        let members = complement_of(s.size(), &set);
        Ok(Self { form: DomainForm::Complement, members, excluded: set })
    }

    fn checked_set(s: &Structure, mut elements: Vec<usize>) -> Result<Vec<usize>, AlgebraError> {
        if let Some(&a) = elements.iter().find(|&&a| a >= s.size()) {
            return Err(AlgebraError::OutOfRange(format!("element index {a}")));
        }
        let len = elements.len();
        elements.sort_unstable();
        elements.dedup();
        if elements.len() != len {
            return Err(AlgebraError::Parse("duplicate element in domain list".into()));
        }
        Ok(elements)
    }

    /// Parse `full`, `list:e1;e2;…` or `complement:e1;e2;…`.
    pub fn parse(s: &Structure, text: &str) -> Result<Self, AlgebraError> {
        let text = text.trim();
        if text == "full" {
            return Ok(Self::full(s));
        }
        let (head, body) = text
            .split_once(':')
            .ok_or_else(|| AlgebraError::Parse(format!("bad domain {text:?}")))?;
        let elements = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(';').map(|e| s.parse_element(e)).collect::<Result<Vec<_>, _>>()?
        };
        match head {
            "list" => Self::list(s, elements),
            "complement" => Self::complement(s, elements),
            _ => Err(AlgebraError::Parse(format!("bad domain kind {head:?}"))),
        }
    }

    pub fn form(&self) -> &DomainForm {
        &self.form
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn excluded(&self) -> &[usize] {
        &self.excluded
    }

    /// `m = |D|`.
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `c = |R| − |D|`.
    pub fn defect(&self) -> usize {
        self.excluded.len()
    }

    pub fn is_full(&self) -> bool {
        self.excluded.is_empty()
    }

    pub fn describe(&self, s: &Structure) -> String {
        let fmt = |v: &[usize]| v.iter().map(|&e| s.format_element(e)).collect::<Vec<_>>().join(";");
        match self.form {
            DomainForm::Full => "full".to_string(),
            DomainForm::List => format!("list:{}", fmt(&self.members)),
            DomainForm::Complement => format!("complement:{}", fmt(&self.excluded)),
        }
    }
}

fn complement_of(size: usize, sorted: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(size - sorted.len());
    let mut it = sorted.iter().peekable();
    for x in 0..size {
        if it.peek() == Some(&&x) {
            it.next();
        } else {
            out.push(x);
        }
    }
    out
}

/// Additive character `ψ_c` of a structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    structure: Arc<Structure>,
    index: usize,
}

/// `exp(2πi·j/e)`.
pub fn root_of_unity(e: u64, j: u64) -> Complex64 {
    let j = j % e;
    if j == 0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / e as f64)
}

/// All `e`-th roots of unity, `table[j] = exp(2πi·j/e)`.
pub fn roots_of_unity(e: u64) -> Vec<Complex64> {
    (0..e).map(|j| root_of_unity(e, j)).collect()
}

impl Character {
    pub fn new(structure: Arc<Structure>, index: usize) -> Result<Self, AlgebraError> {
        if index >= structure.size() {
            return Err(AlgebraError::OutOfRange(format!("character index {index}")));
        }
        Ok(Self { structure, index })
    }

    pub fn principal(structure: Arc<Structure>) -> Self {
        Self { structure, index: 0 }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn structure(&self) -> &Arc<Structure> {
        &self.structure
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// `ψ^i`, which is `ψ_{i·c}`.
    pub fn pow(&self, i: u64) -> Self {
        Self { structure: self.structure.clone(), index: self.structure.group().scale(i, self.index) }
    }

    /// Order in the dual group, equal to the additive order of `c`.
    pub fn order(&self) -> u64 {
        self.structure.group().element_order(self.index)
    }

    /// `ψ(g)` for an element index of the same structure.
    pub fn eval_index(&self, g: usize) -> Complex64 {
        root_of_unity(self.structure.pairing_modulus(), self.structure.pairing(self.index, g))
    }

    /// `ψ(g)` for a residue tuple; rejects tuples from another group.
    pub fn eval(&self, g: &GroupElement) -> Result<Complex64, AlgebraError> {
        let idx = self.structure.group().encode(g)?;
        Ok(self.eval_index(idx))
    }
}

/// `Σ_{a∈D} ψ(f(a))`; `f = None` means `f = x`. Complement-form domains are
/// computed as the full sum minus the excluded terms.
pub fn partial_char_sum(
    s: &Structure,
    domain: &DomainSpec,
    f: Option<&PolySpec>,
    psi: &Character,
) -> Complex64 {
    let e = s.pairing_modulus();
    let value = |a: usize| f.map_or(a, |f| f.eval(s, a));
    let term = |a: usize| root_of_unity(e, s.pairing(psi.index, value(a)));
    match domain.form {
        DomainForm::Complement | DomainForm::Full => {
            let full: Complex64 = (0..s.size()).map(term).sum();
            full - domain.excluded.iter().map(|&a| term(a)).sum::<Complex64>()
        }
        DomainForm::List => domain.members.iter().map(|&a| term(a)).sum(),
    }
}

/// Number of characters `ψ` with `ψ^e = ψ_0`, summed at `b`:
/// `Π_j gcd(e, n_j)` if `gcd(e, n_j) | b_j` for every `j`, else `0`.
fn annihilator_sum(g: &GroupSpec, e: u64, b: usize) -> i64 {
    let mut prod = 1i64;
    for (bj, &n) in g.components(b).zip(g.moduli()) {
        let d = gcd(e, n);
        if bj % d != 0 {
            return 0;
        }
        prod *= d as i64;
    }
    prod
}

/// `Σ ψ(b)` over characters of exact order `d`, by Möbius inversion of
/// [`annihilator_sum`] over the divisors of `d`.
pub fn ramanujan_sum_exact_order(g: &GroupSpec, d: u64, b: usize) -> i64 {
    assert!(d >= 1, "character order must be positive");
    divisors(d)
        .into_iter()
        .map(|e| moebius(d / e) as i64 * annihilator_sum(g, e, b))
        .sum()
}
