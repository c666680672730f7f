//! The idempotented quantum algebra of type A_N as formal syntax.
//!
//! Weights are stored as their Cartan-pairing vectors; generator symbols are
//! the idempotents `1_l`, divided powers `E(i,n)` (raising at node i) and
//! `F(i,n)` (lowering), each decorated with the weight they act on. Words
//! compose right to left and are kept purely syntactic: no rewriting is
//! attempted here. Verification happens by pushing expressions through a
//! target algebra via [`TargetAlgebra`] (the convolution algebra supplies the
//! concrete homomorphism).
//!
//! The defining relation families are generated by [`relation_instance`]:
//! (a) orthogonal idempotents, (b)/(c) idempotent absorption for E and F,
//! (d) the commutator relation with quantum-integer right side, and (e)/(f)
//! the q-Serre relations with alternating divided powers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Type A_N root datum: nodes 1..=N with the tridiagonal Cartan matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RootDatum {
    n: usize,
}

impl RootDatum {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("rank must be at least 1"));
        }
        Ok(RootDatum { n })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Cartan pairing of nodes i, j (1-based): 2 on the diagonal, -1 for
    /// adjacent nodes, 0 otherwise.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        debug_assert!(1 <= i && i <= self.n && 1 <= j && j <= self.n);
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    }

    /// The q-Serre length parameter m = 1 - i.j for distinct nodes.
    pub fn serre_m(&self, i: usize, j: usize) -> u64 {
        (1 - self.cartan(i, j)) as u64
    }

    fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::domain(format!("node {i} out of range 1..={}", self.n)));
        }
        Ok(())
    }
}

/// An integral weight, stored as the vector of Cartan pairings with the
/// simple coroots. Need not be dominant.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    /// The weight with pairing d against the last coroot and 0 elsewhere;
    /// its translates index the flag types of a d-dimensional space.
    pub fn lambda_d(n: usize, d: i64) -> Weight {
        let mut v = vec![0; n];
        v[n - 1] = d;
        Weight(v)
    }
}

/// lambda + n * alpha_i, computed through the Cartan matrix column.
pub fn weight_shift(rd: &RootDatum, lam: &Weight, i: usize, n: i64) -> Result<Weight> {
    rd.check_node(i)?;
    if lam.rank() != rd.rank() {
        return Err(Error::domain("weight rank mismatch"));
    }
    let mut v = lam.0.clone();
    for (j, val) in v.iter_mut().enumerate() {
        *val += n * rd.cartan(j + 1, i);
    }
    Ok(Weight(v))
}

/// A generator symbol decorated with the weight it acts on (its source).
/// `E { i, n, lam }` denotes the divided power raising lam to lam + n alpha_i;
/// `F` lowers correspondingly; `Id` is the idempotent at its weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GeneratorSymbol {
    Id(Weight),
    E { i: usize, n: u64, lam: Weight },
    F { i: usize, n: u64, lam: Weight },
}

impl GeneratorSymbol {
    pub fn source(&self) -> &Weight {
        match self {
            GeneratorSymbol::Id(l) => l,
            GeneratorSymbol::E { lam, .. } | GeneratorSymbol::F { lam, .. } => lam,
        }
    }

    pub fn target(&self, rd: &RootDatum) -> Result<Weight> {
        match self {
            GeneratorSymbol::Id(l) => Ok(l.clone()),
            GeneratorSymbol::E { i, n, lam } => weight_shift(rd, lam, *i, *n as i64),
            GeneratorSymbol::F { i, n, lam } => weight_shift(rd, lam, *i, -(*n as i64)),
        }
    }

    fn validate(&self, rd: &RootDatum) -> Result<()> {
        match self {
            GeneratorSymbol::Id(l) => {
                if l.rank() != rd.rank() {
                    return Err(Error::domain("weight rank mismatch"));
                }
            }
            GeneratorSymbol::E { i, n, lam } | GeneratorSymbol::F { i, n, lam } => {
                rd.check_node(*i)?;
                if *n == 0 {
                    return Err(Error::domain("divided power order must be positive"));
                }
                if lam.rank() != rd.rank() {
                    return Err(Error::domain("weight rank mismatch"));
                }
            }
        }
        Ok(())
    }
}

/// A composable word of generator symbols, composed right to left: the last
/// symbol acts first, and each symbol's target weight must equal the source
/// weight of the symbol to its left.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word(Vec<GeneratorSymbol>);

impl Word {
    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.0
    }

    pub fn source(&self) -> &Weight {
        self.0.last().expect("words are nonempty").source()
    }

    pub fn target(&self, rd: &RootDatum) -> Result<Weight> {
        self.0.first().expect("words are nonempty").target(rd)
    }
}

/// A finite Laurent-linear combination of composable words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UExpr {
    terms: BTreeMap<Word, LaurentPoly>,
}

impl UExpr {
    pub fn zero() -> Self {
        UExpr::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    /// A single word with coefficient 1. Non-composable symbol sequences
    /// normalize to zero, as do empty sequences (there is no global unit).
    pub fn word(rd: &RootDatum, symbols: Vec<GeneratorSymbol>) -> Result<UExpr> {
        if symbols.is_empty() {
            return Ok(UExpr::zero());
        }
        for s in &symbols {
            s.validate(rd)?;
        }
        for w in symbols.windows(2) {
            if &w[1].target(rd)? != w[0].source() {
                return Ok(UExpr::zero());
            }
        }
        let mut terms = BTreeMap::new();
        terms.insert(Word(symbols), LaurentPoly::one());
        Ok(UExpr { terms })
    }

    pub fn scale(&self, c: &LaurentPoly) -> UExpr {
        if c.is_zero() {
            return UExpr::zero();
        }
        UExpr {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k.mul(c))).collect(),
        }
    }

    pub fn add(&self, other: &UExpr) -> UExpr {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = terms.entry(w.clone()).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                terms.remove(w);
            }
        }
        UExpr { terms }
    }

    pub fn sub(&self, other: &UExpr) -> UExpr {
        self.add(&other.scale(&LaurentPoly::from_int(-1)))
    }
}

/// Target-algebra interface for evaluating expressions: supplies generator
/// images plus ambient ring structure. Mapping a symbol to zero is allowed.
pub trait TargetAlgebra {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, c: &LaurentPoly, a: &Self::Elem) -> Self::Elem;
    fn image(&self, sym: &GeneratorSymbol) -> Result<Self::Elem>;
}

/// Push an expression through a homomorphism: sum over terms of coefficient
/// times the product of symbol images, composed in word order.
pub fn evaluate<T: TargetAlgebra>(expr: &UExpr, target: &T) -> Result<T::Elem> {
    let mut acc = target.zero();
    for (word, coeff) in &expr.terms {
        let mut prod: Option<T::Elem> = None;
        for sym in word.symbols() {
            let img = target.image(sym)?;
            prod = Some(match prod {
                None => img,
                Some(p) => target.mul(&p, &img)?,
            });
        }
        let term = target.scale(coeff, &prod.expect("words are nonempty"));
        acc = target.add(&acc, &term);
    }
    Ok(acc)
}

/// Which defining relation family to instantiate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum RelationKind {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl RelationKind {
    pub fn all() -> [RelationKind; 6] {
        [
            RelationKind::A,
            RelationKind::B,
            RelationKind::C,
            RelationKind::D,
            RelationKind::E,
            RelationKind::F,
        ]
    }

    /// Human-readable audit tag for reports.
    pub fn tag(&self) -> &'static str {
        match self {
            RelationKind::A => "(Ua) idempotent orthogonality",
            RelationKind::B => "(Ub) idempotent absorption for E",
            RelationKind::C => "(Uc) idempotent absorption for F",
            RelationKind::D => "(Ud) commutator = quantum integer",
            RelationKind::E => "(Ue) q-Serre for E",
            RelationKind::F => "(Uf) q-Serre for F",
        }
    }
}

impl FromStr for RelationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(RelationKind::A),
            "b" => Ok(RelationKind::B),
            "c" => Ok(RelationKind::C),
            "d" => Ok(RelationKind::D),
            "e" => Ok(RelationKind::E),
            "f" => Ok(RelationKind::F),
            _ => Err(Error::domain(format!("unknown relation kind {s:?}"))),
        }
    }
}

/// Parameters for one relation instance. The `right` flag on B/C selects
/// between the two absorption identities (multiply by the idempotent on the
/// right or on the left).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RelationParams {
    A { lam: Weight, lam2: Weight },
    B { i: usize, lam: Weight, lam2: Weight, right: bool },
    C { i: usize, lam: Weight, lam2: Weight, right: bool },
    D { i: usize, j: usize, lam: Weight },
    E { i: usize, j: usize, lam: Weight },
    F { i: usize, j: usize, lam: Weight },
}

impl RelationParams {
    pub fn kind(&self) -> RelationKind {
        match self {
            RelationParams::A { .. } => RelationKind::A,
            RelationParams::B { .. } => RelationKind::B,
            RelationParams::C { .. } => RelationKind::C,
            RelationParams::D { .. } => RelationKind::D,
            RelationParams::E { .. } => RelationKind::E,
            RelationParams::F { .. } => RelationKind::F,
        }
    }
}

fn id(l: &Weight) -> GeneratorSymbol {
    GeneratorSymbol::Id(l.clone())
}
fn e1(i: usize, l: &Weight) -> GeneratorSymbol {
    GeneratorSymbol::E { i, n: 1, lam: l.clone() }
}
fn f1(i: usize, l: &Weight) -> GeneratorSymbol {
    GeneratorSymbol::F { i, n: 1, lam: l.clone() }
}

/// Divided power of order n, or the idempotent when n = 0.
fn e_div(i: usize, n: u64, l: &Weight) -> GeneratorSymbol {
    if n == 0 {
        id(l)
    } else {
        GeneratorSymbol::E { i, n, lam: l.clone() }
    }
}
fn f_div(i: usize, n: u64, l: &Weight) -> GeneratorSymbol {
    if n == 0 {
        id(l)
    } else {
        GeneratorSymbol::F { i, n, lam: l.clone() }
    }
}

/// Build the two sides of a defining relation as formal expressions.
pub fn relation_instance(rd: &RootDatum, params: &RelationParams) -> Result<(UExpr, UExpr)> {
    match params {
        RelationParams::A { lam, lam2 } => {
            let lhs = UExpr::word(rd, vec![id(lam2), id(lam)])?;
            let rhs = if lam == lam2 {
                UExpr::word(rd, vec![id(lam)])?
            } else {
                UExpr::zero()
            };
            Ok((lhs, rhs))
        }
        RelationParams::B { i, lam, lam2, right } => {
            rd.check_node(*i)?;
            let e = e1(*i, lam);
            if *right {
                // E_{lam+a_i, lam} 1_{lam'} = delta_{lam,lam'} E
                let lhs = UExpr::word(rd, vec![e.clone(), id(lam2)])?;
                let rhs = if lam == lam2 {
                    UExpr::word(rd, vec![e])?
                } else {
                    UExpr::zero()
                };
                Ok((lhs, rhs))
            } else {
                // 1_{lam'} E_{lam+a_i, lam} = delta_{lam', lam+a_i} E
                let lhs = UExpr::word(rd, vec![id(lam2), e.clone()])?;
                let rhs = if *lam2 == weight_shift(rd, lam, *i, 1)? {
                    UExpr::word(rd, vec![e])?
                } else {
                    UExpr::zero()
                };
                Ok((lhs, rhs))
            }
        }
        RelationParams::C { i, lam, lam2, right } => {
            rd.check_node(*i)?;
            let f = f1(*i, lam);
            if *right {
                let lhs = UExpr::word(rd, vec![f.clone(), id(lam2)])?;
                let rhs = if lam == lam2 {
                    UExpr::word(rd, vec![f])?
                } else {
                    UExpr::zero()
                };
                Ok((lhs, rhs))
            } else {
                let lhs = UExpr::word(rd, vec![id(lam2), f.clone()])?;
                let rhs = if *lam2 == weight_shift(rd, lam, *i, -1)? {
                    UExpr::word(rd, vec![f])?
                } else {
                    UExpr::zero()
                };
                Ok((lhs, rhs))
            }
        }
        RelationParams::D { i, j, lam } => {
            rd.check_node(*i)?;
            rd.check_node(*j)?;
            // E_{.., lam - a_j} F_{lam - a_j, lam} - F_{.., lam + a_i} E_{lam + a_i, lam}
            let lam_mj = weight_shift(rd, lam, *j, -1)?;
            let ef = UExpr::word(rd, vec![e1(*i, &lam_mj), f1(*j, lam)])?;
            let fe = UExpr::word(
                rd,
                vec![f1(*j, &weight_shift(rd, lam, *i, 1)?), e1(*i, lam)],
            )?;
            let lhs = ef.sub(&fe);
            let rhs = if i == j {
                UExpr::word(rd, vec![id(lam)])?
                    .scale(&LaurentPoly::quantum_integer_signed(lam.pairing(*i)))
            } else {
                UExpr::zero()
            };
            Ok((lhs, rhs))
        }
        RelationParams::E { i, j, lam } => {
            rd.check_node(*i)?;
            rd.check_node(*j)?;
            if i == j {
                return Err(Error::domain("q-Serre relation requires distinct nodes"));
            }
            let m = rd.serre_m(*i, *j);
            let mut lhs = UExpr::zero();
            for p in 0..=m {
                // E_i^{(m-p)} E_j E_i^{(p)} acting on lam
                let w1 = lam.clone();
                let w2 = weight_shift(rd, &w1, *i, p as i64)?;
                let w3 = weight_shift(rd, &w2, *j, 1)?;
                let word = UExpr::word(
                    rd,
                    vec![e_div(*i, m - p, &w3), e1(*j, &w2), e_div(*i, p, &w1)],
                )?;
                let sign = if p % 2 == 0 { 1 } else { -1 };
                lhs = lhs.add(&word.scale(&LaurentPoly::from_int(sign)));
            }
            Ok((lhs, UExpr::zero()))
        }
        RelationParams::F { i, j, lam } => {
            rd.check_node(*i)?;
            rd.check_node(*j)?;
            if i == j {
                return Err(Error::domain("q-Serre relation requires distinct nodes"));
            }
            let m = rd.serre_m(*i, *j);
            let mut lhs = UExpr::zero();
            for p in 0..=m {
                let w1 = lam.clone();
                let w2 = weight_shift(rd, &w1, *i, -(p as i64))?;
                let w3 = weight_shift(rd, &w2, *j, -1)?;
                let word = UExpr::word(
                    rd,
                    vec![f_div(*i, m - p, &w3), f1(*j, &w2), f_div(*i, p, &w1)],
                )?;
                let sign = if p % 2 == 0 { 1 } else { -1 };
                lhs = lhs.add(&word.scale(&LaurentPoly::from_int(sign)));
            }
            Ok((lhs, UExpr::zero()))
        }
    }
}

// ---------------------------------------------------------------------------
// Textual word syntax: E(i,n)@1,0  F(i,n)@-1,2  1@0,3 ; juxtaposition composes
// ---------------------------------------------------------------------------

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lam = |w: &Weight| {
            w.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        match self {
            GeneratorSymbol::Id(l) => write!(f, "1@{}", lam(l)),
            GeneratorSymbol::E { i, n, lam: l } => write!(f, "E({i},{n})@{}", lam(l)),
            GeneratorSymbol::F { i, n, lam: l } => write!(f, "F({i},{n})@{}", lam(l)),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parse a whitespace-separated word of symbols.
pub fn parse_word(rd: &RootDatum, input: &str) -> Result<UExpr> {
    let mut symbols = Vec::new();
    for tok in input.split_whitespace() {
        symbols.push(parse_symbol(tok)?);
    }
    if symbols.is_empty() {
        return Err(Error::domain("empty word"));
    }
    UExpr::word(rd, symbols)
}

fn parse_symbol(tok: &str) -> Result<GeneratorSymbol> {
    let (head, lam) = tok
        .split_once('@')
        .ok_or_else(|| Error::domain(format!("symbol {tok:?} missing @weight")))?;
    let weight = Weight(
        lam.split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::domain(format!("bad weight in {tok:?}")))?,
    );
    if head == "1" {
        return Ok(GeneratorSymbol::Id(weight));
    }
    let (kind, args) = head
        .split_once('(')
        .ok_or_else(|| Error::domain(format!("bad symbol {tok:?}")))?;
    let args = args
        .strip_suffix(')')
        .ok_or_else(|| Error::domain(format!("bad symbol {tok:?}")))?;
    let (i, n) = args
        .split_once(',')
        .ok_or_else(|| Error::domain(format!("bad symbol {tok:?}")))?;
    let i: usize = i.trim().parse().map_err(|_| Error::domain("bad node index"))?;
    let n: u64 = n.trim().parse().map_err(|_| Error::domain("bad order"))?;
    match kind {
        "E" => Ok(GeneratorSymbol::E { i, n, lam: weight }),
        "F" => Ok(GeneratorSymbol::F { i, n, lam: weight }),
        _ => Err(Error::domain(format!("unknown symbol kind {kind:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_shift_cartan_column() {
        let rd = RootDatum::new(2).unwrap();
        let lam = Weight(vec![0, 0]);
        let shifted = weight_shift(&rd, &lam, 1, 1).unwrap();
        assert_eq!(shifted, Weight(vec![2, -1]));
        assert_eq!(weight_shift(&rd, &lam, 1, 0).unwrap(), lam);
        let back = weight_shift(&rd, &shifted, 1, -1).unwrap();
        assert_eq!(back, lam);
        assert!(weight_shift(&rd, &lam, 3, 1).is_err());
    }

    #[test]
    fn words_normalize_noncomposable() {
        let rd = RootDatum::new(1).unwrap();
        let lam = Weight(vec![0]);
        let other = Weight(vec![5]);
        // 1_other . E(1,1)@lam has mismatched inner weights unless other = lam + 2
        let expr = UExpr::word(
            &rd,
            vec![GeneratorSymbol::Id(other), GeneratorSymbol::E { i: 1, n: 1, lam: lam.clone() }],
        )
        .unwrap();
        assert!(expr.is_zero());
        let good = UExpr::word(
            &rd,
            vec![
                GeneratorSymbol::Id(Weight(vec![2])),
                GeneratorSymbol::E { i: 1, n: 1, lam },
            ],
        )
        .unwrap();
        assert!(!good.is_zero());
    }

    #[test]
    fn relation_a_shapes() {
        let rd = RootDatum::new(2).unwrap();
        let lam = Weight(vec![1, 0]);
        let (lhs, rhs) = relation_instance(
            &rd,
            &RelationParams::A { lam: lam.clone(), lam2: lam.clone() },
        )
        .unwrap();
        assert_eq!(lhs.terms().count(), 1);
        assert_eq!(rhs.terms().count(), 1);
        let (lhs2, rhs2) = relation_instance(
            &rd,
            &RelationParams::A { lam, lam2: Weight(vec![0, 0]) },
        )
        .unwrap();
        assert_eq!(lhs2.terms().count(), 1);
        assert!(rhs2.is_zero());
    }

    #[test]
    fn relation_d_diagonal_coefficient() {
        let rd = RootDatum::new(1).unwrap();
        let lam = Weight(vec![2]);
        let (_, rhs) = relation_instance(&rd, &RelationParams::D { i: 1, j: 1, lam }).unwrap();
        let coeffs: Vec<_> = rhs.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(coeffs.len(), 1);
        assert_eq!(coeffs[0], LaurentPoly::quantum_integer(2));
    }

    #[test]
    fn relation_e_term_count() {
        let rd = RootDatum::new(2).unwrap();
        let lam = Weight(vec![0, 1]);
        let (lhs, rhs) = relation_instance(&rd, &RelationParams::E { i: 1, j: 2, lam }).unwrap();
        // m = 2: three alternating terms
        assert_eq!(lhs.terms().count(), 3);
        assert!(rhs.is_zero());
        assert!(relation_instance(
            &rd,
            &RelationParams::E { i: 1, j: 1, lam: Weight(vec![0, 0]) }
        )
        .is_err());
    }

    #[test]
    fn generated_words_are_composable() {
        // constructor invariant: every stored word chains weights correctly
        let rd = RootDatum::new(2).unwrap();
        for i in 1..=2usize {
            for j in 1..=2usize {
                if i == j {
                    continue;
                }
                let lam = Weight(vec![-1, 2]);
                let (lhs, _) =
                    relation_instance(&rd, &RelationParams::E { i, j, lam }).unwrap();
                for (w, _) in lhs.terms() {
                    for pair in w.symbols().windows(2) {
                        assert_eq!(&pair[1].target(&rd).unwrap(), pair[0].source());
                    }
                }
            }
        }
    }

    #[test]
    fn word_syntax_round_trip() {
        let rd = RootDatum::new(2).unwrap();
        let expr = parse_word(&rd, "E(1,2)@0,1").unwrap();
        assert_eq!(expr.terms().count(), 1);
        let (w, _) = expr.terms().next().unwrap();
        assert_eq!(w.to_string(), "E(1,2)@0,1");
        assert!(parse_word(&rd, "Q(1,1)@0,0").is_err());
    }
}
