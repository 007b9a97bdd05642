//! Orthogonal symmetric affine Kac-Moody algebras: the verification
//! predicate, type and effectiveness, duality, irreducibility, and the full
//! catalog over `a₁⁽¹⁾`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::findim::{
    make_abelian, make_su, BaseField, Coords, FiniteAutomorphism, FiniteLieAlgebra, MatrixOp,
};
use crate::involution::{
    check_kind, dualize, fixed_and_eigenspaces, involution_from_invariants, real_form_subspace,
    CartanDecomposition, CoefficientMap, InvolutionDescriptor, Kind, RealFormDescriptor,
    TruncSubspace, Truncation,
};
use crate::kmext::{ExtendedElement, KmAlgebra};
use crate::linalg::{subspace, CMatrix};
use crate::loops::{Definiteness, LoopAlgebra};
use crate::scalar::Scalar;

/// The classes of irreducible OSAKAs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OsakaClass {
    I,
    II,
    III,
    IV,
    Euclidean,
}

impl OsakaClass {
    /// The type an OSAKA of this class must classify as.
    pub fn expected_type(self) -> OsakaType {
        match self {
            OsakaClass::I | OsakaClass::II => OsakaType::Compact,
            OsakaClass::III | OsakaClass::IV => OsakaType::NonCompact,
            OsakaClass::Euclidean => OsakaType::Euclidean,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OsakaClass::I => "I",
            OsakaClass::II => "II",
            OsakaClass::III => "III",
            OsakaClass::IV => "IV",
            OsakaClass::Euclidean => "Euclidean",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OsakaType {
    Compact,
    NonCompact,
    Euclidean,
    /// Neither the real form nor its Cartan split has the required signs.
    Indeterminate,
}

impl OsakaType {
    pub fn as_str(self) -> &'static str {
        match self {
            OsakaType::Compact => "Compact",
            OsakaType::NonCompact => "NonCompact",
            OsakaType::Euclidean => "Euclidean",
            OsakaType::Indeterminate => "Indeterminate",
        }
    }
}

impl fmt::Display for OsakaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The subspace `R ∩ {X : map(X) = eigenvalue·X}`.
#[derive(Clone, Debug)]
pub struct ExpectedSpace {
    pub map: CoefficientMap,
    pub eigenvalue: i8,
}

impl ExpectedSpace {
    pub fn new(map: CoefficientMap, eigenvalue: i8) -> Self {
        ExpectedSpace { map, eigenvalue }
    }
}

#[derive(Clone, Debug)]
pub struct OsakaRecord {
    pub name: String,
    pub km: KmAlgebra,
    pub real_form: RealFormDescriptor,
    pub involution: InvolutionDescriptor,
    pub claimed_type: Option<OsakaClass>,
    pub expected_k: Option<ExpectedSpace>,
    pub expected_p: Option<ExpectedSpace>,
    pub dual_name: Option<String>,
}

impl OsakaRecord {
    pub fn decomposition(
        &self,
        n: i64,
    ) -> Result<CartanDecomposition, crate::error::InvolutionError> {
        fixed_and_eigenspaces(&self.km, &self.involution.to_map(), &self.real_form, n)
    }
}

/// Linear functionals giving the center and semisimple components of a
/// coefficient vector, in that order.
fn component_functionals(g: &FiniteLieAlgebra) -> (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) {
    let z: Vec<Coords> = g.center().to_vec();
    let s: Vec<Coords> = g.simple_blocks().iter().flatten().cloned().collect();
    let cols: Vec<Coords> = z.iter().chain(&s).cloned().collect();
    let inv = CMatrix::from_columns(g.dim(), &cols)
        .inverse()
        .expect("reductive splitting");
    let rows: Vec<Vec<Scalar>> = (0..g.dim()).map(|i| inv.row(i).to_vec()).collect();
    let (zr, sr) = rows.split_at(z.len());
    (zr.to_vec(), sr.to_vec())
}

fn apply_functionals(fs: &[Vec<Scalar>], a: &[Scalar]) -> Vec<Scalar> {
    fs.iter()
        .map(|f| {
            f.iter()
                .zip(a)
                .fold(Scalar::from_int(0), |acc, (u, v)| &acc + &(u * v))
        })
        .collect()
}

/// Per-check verdicts of [`osaka_verify`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OsakaChecks {
    /// (a) the real form is closed under the bracket.
    pub closure: bool,
    /// (b) the involution preserves the real form, squares to the identity
    /// and is a homomorphism.
    pub involutive: bool,
    /// (c) the fixed algebra over the semisimple block is a compact loop algebra.
    pub fix_compact: bool,
    /// (d) the fixed algebra meets the abelian loops trivially.
    pub fix_abelian_zero: bool,
    /// (e) computed `K`, `P` equal the stated ones.
    pub kp_match: bool,
}

impl OsakaChecks {
    pub fn all(&self) -> bool {
        self.closure
            && self.involutive
            && self.fix_compact
            && self.fix_abelian_zero
            && self.kp_match
    }
}

#[derive(Clone, Debug)]
pub struct OsakaReport {
    pub name: String,
    pub degree: i64,
    pub checks: OsakaChecks,
    pub osaka_type: Option<OsakaType>,
    pub claimed_type: Option<OsakaClass>,
    /// Classified type agrees with the claimed class (true when nothing is claimed).
    pub type_consistent: bool,
    pub effective: Option<Effectiveness>,
    pub irreducible: Option<Irreducibility>,
    pub notes: Vec<String>,
}

impl OsakaReport {
    pub fn passed(&self) -> bool {
        self.checks.all() && self.type_consistent
    }
}

/// Checks (a)–(e) at truncation degree `n`, plus type, effectiveness and
/// irreducibility once the record is an OSAKA.
pub fn osaka_verify(rec: &OsakaRecord, n: i64) -> OsakaReport {
    let mut report = OsakaReport {
        name: rec.name.clone(),
        degree: n,
        checks: OsakaChecks::default(),
        osaka_type: None,
        claimed_type: rec.claimed_type,
        type_consistent: false,
        effective: None,
        irreducible: None,
        notes: Vec::new(),
    };
    if let Err(e) = rec.involution.validate(&rec.km) {
        report.notes.push(format!("involution: {e}"));
        return report;
    }
    let km = &rec.km;
    let theta = rec.involution.to_map();
    let t = Truncation::new(km, n);
    let real = real_form_subspace(&t, &rec.real_form);
    let basis = real.elements(&t);
    let brackets: Vec<Vec<ExtendedElement>> = basis
        .par_iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| km.hat_bracket(a, b).expect("same algebra"))
                .collect()
        })
        .collect();

    report.checks.closure = brackets.iter().flatten().all(|x| rec.real_form.contains(x));
    if !report.checks.closure {
        report.notes.push("real form is not closed".into());
    }

    let dec = match fixed_and_eigenspaces(km, &theta, &rec.real_form, n) {
        Ok(d) => Some(d),
        Err(e) => {
            report.notes.push(format!("decomposition: {e}"));
            None
        }
    };
    let images: Vec<ExtendedElement> = basis.iter().map(|x| theta.apply(x)).collect();
    let hom = (0..basis.len()).into_par_iter().all(|i| {
        (0..basis.len()).all(|j| {
            theta.apply(&brackets[i][j])
                == km
                    .hat_bracket(&images[i], &images[j])
                    .expect("same algebra")
        })
    });
    if !hom {
        report.notes.push("involution is not a homomorphism".into());
    }
    report.checks.involutive = dec.is_some() && hom;
    let Some(dec) = dec else { return report };

    let (zf, sf) = component_functionals(km.finite());
    let has_semisimple = !sf.is_empty();

    // (c) Fix ∩ L̂(g_s): no c, d and a definite loop part.
    let no_abelian = |b: usize, x: &ExtendedElement| -> Vec<Scalar> {
        if b == 0 {
            return Vec::new();
        }
        t.indices(b)
            .into_iter()
            .flat_map(|k| apply_functionals(&zf, &x.loop_part.coefficient(k)))
            .collect()
    };
    let mut eq: Vec<(&CoefficientMap, i8)> =
        rec.real_form.conditions.iter().map(|m| (m, 1)).collect();
    eq.push((&theta, 1));
    let fix_s = t.solve(&eq, &[&no_abelian]);
    report.checks.fix_compact = if !has_semisimple {
        true
    } else if fix_s.cd_dim() > 0 {
        report.notes.push("fixed algebra contains c or d".into());
        false
    } else {
        match km.loops().killing_gram(&fix_s.loop_elements(&t)) {
            Ok(g) if g.verdict == Definiteness::NegDefinite || g.matrix.rows() == 0 => true,
            Ok(g) => {
                report
                    .notes
                    .push(format!("fixed loop Gram is {}", g.verdict.as_str()));
                false
            }
            Err(e) => {
                report.notes.push(format!("fixed loop Gram: {e}"));
                false
            }
        }
    };

    // (d) Fix ∩ L(a) = 0.
    let abelian_only = |b: usize, x: &ExtendedElement| -> Vec<Scalar> {
        if b == 0 {
            return vec![x.c.clone(), x.d.clone()];
        }
        t.indices(b)
            .into_iter()
            .flat_map(|k| apply_functionals(&sf, &x.loop_part.coefficient(k)))
            .collect()
    };
    report.checks.fix_abelian_zero = t.solve(&eq, &[&abelian_only]).is_zero();
    if !report.checks.fix_abelian_zero {
        report
            .notes
            .push("fixed algebra meets the abelian loops".into());
    }

    // (e)
    let mut kp = true;
    for (exp, computed, what) in [
        (&rec.expected_k, &dec.k, "K"),
        (&rec.expected_p, &dec.p, "P"),
    ] {
        if let Some(e) = exp {
            let mut eq: Vec<(&CoefficientMap, i8)> =
                rec.real_form.conditions.iter().map(|m| (m, 1)).collect();
            eq.push((&e.map, e.eigenvalue));
            let stated = t.solve(&eq, &[]);
            let diff = stated.differing_blocks(computed, &t);
            if !diff.is_empty() {
                report.notes.push(format!(
                    "{what} differs from the stated space in blocks {diff:?}"
                ));
                kp = false;
            }
        }
    }
    report.checks.kp_match = kp;

    if report.checks.all() {
        let ty = classify_decomposition(&dec, has_semisimple);
        report.type_consistent = rec.claimed_type.map_or(true, |c| c.expected_type() == ty);
        report.osaka_type = Some(ty);
        report.effective = Some(effectiveness_check(rec).verdict);
        report.irreducible = Some(irreducibility_check(rec));
    }
    report
}

/// Verifies records in parallel; output order follows the input.
pub fn verify_all(records: &[OsakaRecord], n: i64) -> Vec<OsakaReport> {
    records.par_iter().map(|r| osaka_verify(r, n)).collect()
}

fn classify_decomposition(dec: &CartanDecomposition, has_semisimple: bool) -> OsakaType {
    if !has_semisimple {
        return OsakaType::Euclidean;
    }
    let verdict = |g: Result<crate::loops::GramReport, _>| g.map(|g| g.verdict).ok();
    if verdict(dec.real_loop_gram()) == Some(Definiteness::NegDefinite) {
        return OsakaType::Compact;
    }
    if verdict(dec.k_loop_gram()) == Some(Definiteness::NegDefinite)
        && verdict(dec.p_loop_gram()) == Some(Definiteness::PosDefinite)
    {
        OsakaType::NonCompact
    } else {
        OsakaType::Indeterminate
    }
}

/// Euclidean iff `g` has no semisimple part; otherwise compact iff the real
/// form has a negative definite loop Gram at degree `n`.
pub fn classify_type(
    rec: &OsakaRecord,
    n: i64,
) -> Result<OsakaType, crate::error::InvolutionError> {
    let has_semisimple = !rec.km.finite().simple_blocks().is_empty();
    Ok(classify_decomposition(
        &rec.decomposition(n)?,
        has_semisimple,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Effectiveness {
    Effective,
    NotEffective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EffectivenessReport {
    pub verdict: Effectiveness,
    pub maps_c_to_minus_c: bool,
    pub kind: Kind,
    /// Effective implies second kind.
    pub lemma_holds: bool,
}

/// Effective iff the fixed algebra meets the center `Rc ⊕ (constant loops in z(g))`
/// trivially.
pub fn effectiveness_check(rec: &OsakaRecord) -> EffectivenessReport {
    let km = &rec.km;
    let theta = rec.involution.to_map();
    let t = Truncation::new(km, 0);
    let (_, sf) = component_functionals(km.finite());
    let central = |b: usize, x: &ExtendedElement| -> Vec<Scalar> {
        if b == 0 {
            return vec![x.d.clone()];
        }
        apply_functionals(&sf, &x.loop_part.coefficient(0))
    };
    let mut eq: Vec<(&CoefficientMap, i8)> =
        rec.real_form.conditions.iter().map(|m| (m, 1)).collect();
    eq.push((&theta, 1));
    let verdict = if t.solve(&eq, &[&central]).is_zero() {
        Effectiveness::Effective
    } else {
        Effectiveness::NotEffective
    };
    let maps_c_to_minus_c = theta.apply(&km.c()) == km.c().scale(&Scalar::from_int(-1));
    let kind = check_kind(&rec.involution);
    let lemma_holds =
        verdict == Effectiveness::NotEffective || (maps_c_to_minus_c && kind == Kind::SecondKind);
    EffectivenessReport {
        verdict,
        maps_c_to_minus_c,
        kind,
        lemma_holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// Indices of an invariant proper collection of atoms.
    Reducible(Vec<usize>),
}

/// Atoms are the simple blocks of `g` followed by the center basis lines. A
/// proper collection whose span is stable under the involution and every
/// real-form condition gives an invariant ideal.
pub fn irreducibility_check(rec: &OsakaRecord) -> Irreducibility {
    let g = rec.km.finite();
    let mut atoms: Vec<Vec<Coords>> = g.simple_blocks().to_vec();
    atoms.extend(g.center().iter().map(|z| vec![z.clone()]));
    let maps: Vec<CoefficientMap> = std::iter::once(rec.involution.to_map())
        .chain(rec.real_form.conditions.iter().cloned())
        .collect();
    let n = atoms.len();
    let dim = g.dim();
    for mask in 1..(1u64 << n) - 1 {
        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let span: Vec<Coords> = subset.iter().flat_map(|&i| atoms[i].clone()).collect();
        let stable = maps.iter().all(|m| {
            span.iter().all(|v| {
                let v: Coords = if m.conjugate {
                    v.iter().map(Scalar::conj).collect()
                } else {
                    v.clone()
                };
                subspace::contains(dim, &span, &m.linear.mul_vec(&v))
            })
        });
        if stable {
            return Irreducibility::Reducible(subset);
        }
    }
    Irreducibility::Irreducible
}

/// One entry of the duality table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPair {
    pub name: String,
    /// The record whose real form and involution the dual reproduces.
    pub partner: Option<String>,
    pub matches_declared: bool,
    pub type_flips: bool,
    /// `dualize ∘ dualize` returns the original conditions.
    pub double_dual_identity: bool,
}

/// Dualizes every record at degree `n` and looks the result up in the catalog
/// by comparing truncated real forms and involutions.
pub fn duality_pairing(catalog: &[OsakaRecord], n: i64) -> Vec<DualPair> {
    let decs: Vec<Option<CartanDecomposition>> = catalog
        .par_iter()
        .map(|r| r.decomposition(n).ok())
        .collect();
    catalog
        .par_iter()
        .zip(&decs)
        .map(|(rec, dec)| {
            let Some(dec) = dec else {
                return DualPair {
                    name: rec.name.clone(),
                    partner: None,
                    matches_declared: false,
                    type_flips: false,
                    double_dual_identity: false,
                };
            };
            let dual_rf = dualize(dec);
            let t = &dec.truncation;
            let partner = catalog.iter().zip(&decs).find_map(|(other, odec)| {
                let odec = odec.as_ref()?;
                let same_algebra = other.km.finite().dim() == rec.km.finite().dim()
                    && other.km.twist_order() == rec.km.twist_order()
                    && other.km.loops().sigma() == rec.km.loops().sigma();
                let rf = real_form_subspace(t, &dual_rf);
                (same_algebra && odec.involution == dec.involution && rf.same_as(&odec.real, t))
                    .then(|| other.name.clone())
            });
            let dual_dec = fixed_and_eigenspaces(&rec.km, &dec.involution, &dual_rf, n).ok();
            let has_semisimple = !rec.km.finite().simple_blocks().is_empty();
            let type_flips = dual_dec.as_ref().map_or(false, |d| {
                let a = classify_decomposition(dec, has_semisimple);
                let b = classify_decomposition(d, has_semisimple);
                matches!(
                    (a, b),
                    (OsakaType::Compact, OsakaType::NonCompact)
                        | (OsakaType::NonCompact, OsakaType::Compact)
                )
            });
            let double_dual_identity = dual_dec
                .as_ref()
                .map_or(false, |d| dualize(d).same_conditions(&dec.real_form));
            DualPair {
                name: rec.name.clone(),
                matches_declared: partner.is_some() && partner == rec.dual_name,
                partner,
                type_flips,
                double_dual_identity,
            }
        })
        .collect()
}

/// Numbers of involutions of the second kind for exceptional affine types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionCountTable {
    pub counts: BTreeMap<&'static str, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("no tabulated count for {0}")]
pub struct NotTabulated(pub String);

impl InvolutionCountTable {
    /// Accepts `e₆⁽¹⁾` as well as the ASCII spellings `e6^(1)` and `e6(1)`.
    pub fn lookup(&self, name: &str) -> Result<u32, NotTabulated> {
        let key = normalize(name);
        self.counts
            .iter()
            .find(|(k, _)| normalize(k) == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| NotTabulated(name.to_string()))
    }
}

fn normalize(name: &str) -> String {
    name.chars()
        .filter_map(|c| match c {
            '₀'..='₉' => char::from_digit(c as u32 - '₀' as u32, 10),
            '¹' => Some('1'),
            '⁽' | '⁾' | '(' | ')' | '^' => None,
            c => Some(c.to_ascii_lowercase()),
        })
        .collect()
}

pub fn involution_counts() -> InvolutionCountTable {
    let counts = [
        ("e₆⁽¹⁾", 9),
        ("e₇⁽¹⁾", 10),
        ("e₈⁽¹⁾", 6),
        ("f₄⁽¹⁾", 6),
        ("g₂⁽¹⁾", 3),
    ]
    .into_iter()
    .collect();
    InvolutionCountTable { counts }
}

// ---------------------------------------------------------------------------
// Catalog

fn su2() -> FiniteLieAlgebra {
    make_su(2).expect("su(2)")
}

fn su2_pair() -> FiniteLieAlgebra {
    FiniteLieAlgebra::direct_sum(&su2(), &su2())
        .expect("su(2)⊕su(2)")
        .with_name("su(2)⊕su(2)")
}

fn word(km: &KmAlgebra, label: &str, w: &[MatrixOp], reflect: bool) -> CoefficientMap {
    CoefficientMap::from_word(label, km.finite(), w, reflect, 0).expect("catalog map")
}

fn auto(km: &KmAlgebra, w: &[MatrixOp], order: u32) -> FiniteAutomorphism {
    FiniteAutomorphism::from_word(km.finite(), w, order).expect("catalog automorphism")
}

fn compact_form(km: &KmAlgebra, name: &str) -> RealFormDescriptor {
    RealFormDescriptor::new(
        name,
        vec![word(km, "u_{−n} = −ū_nᵀ", &[MatrixOp::CStar], true)],
    )
    .expect("antilinear")
}

fn untwisted_su2() -> KmAlgebra {
    KmAlgebra::new(LoopAlgebra::untwisted(&su2()))
}

fn twisted_su2() -> KmAlgebra {
    let g = su2().complexified();
    let mu = FiniteAutomorphism::from_word(&g, &[MatrixOp::NegT], 2).expect("μ");
    KmAlgebra::new(LoopAlgebra::twisted(&su2(), mu).expect("order two"))
}

fn pair_km() -> KmAlgebra {
    KmAlgebra::new(LoopAlgebra::untwisted(&su2_pair()))
}

/// The eight OSAKAs of `a₁⁽¹⁾`: types I and III for each invariant pair
/// `[Id,Id]`, `[Id,μ]`, `[μ,μ]`, and one each of types II and IV.
pub fn build_catalog_a1() -> Vec<OsakaRecord> {
    let untw = untwisted_su2();
    let tw = twisted_su2();
    let pair = pair_km();
    let id = FiniteAutomorphism::identity(3);
    let mu = auto(&untw, &[MatrixOp::NegT], 2);
    let mut out = Vec::new();

    let cstar_nr = |km: &KmAlgebra| word(km, "u_n = −ū_nᵀ", &[MatrixOp::CStar], false);
    let conj_nr = |km: &KmAlgebra| word(km, "u_n = ū_n", &[MatrixOp::Conj], false);
    let negt_r = |km: &KmAlgebra| word(km, "u_n = −u_{−n}ᵀ", &[MatrixOp::NegT], true);
    let cstar_r = |km: &KmAlgebra| word(km, "u_n = −ū_{−n}ᵀ", &[MatrixOp::CStar], true);

    // type I: compact form with the involution of an invariant pair
    for (label, plus, minus, km) in [
        ("[Id,Id]", &id, &id, &untw),
        ("[Id,μ]", &mu, &id, &tw),
        ("[μ,μ]", &mu, &mu, &untw),
    ] {
        let (mut inv, _) = involution_from_invariants(plus, minus).expect("involutive pair");
        inv.label = format!("ρ{label}");
        let kmap = if plus.is_identity() {
            cstar_nr(km)
        } else {
            conj_nr(km)
        };
        out.push(OsakaRecord {
            name: format!("I-{label}"),
            km: km.clone(),
            real_form: compact_form(km, "L̂(su(2))"),
            involution: inv,
            claimed_type: Some(OsakaClass::I),
            expected_k: Some(ExpectedSpace::new(kmap.clone(), 1)),
            expected_p: Some(ExpectedSpace::new(kmap, -1)),
            dual_name: Some(format!("III-{label}")),
        });
    }

    // type II: compact form of su(2)⊕su(2) with the factor swap
    let swap = auto(&pair, &[MatrixOp::swap(2)], 2);
    let swap_r = word(&pair, "(f,g) = (g*, f*)", &[MatrixOp::swap(2)], true);
    out.push(OsakaRecord {
        name: "II".into(),
        km: pair.clone(),
        real_form: compact_form(&pair, "L̂(su(2)⊕su(2))"),
        involution: InvolutionDescriptor::standard("swap", swap.clone(), true),
        claimed_type: Some(OsakaClass::II),
        expected_k: Some(ExpectedSpace::new(swap_r.clone(), 1)),
        expected_p: Some(ExpectedSpace::new(swap_r, -1)),
        dual_name: Some("IV".into()),
    });

    // type III: almost split forms with their Cartan involutions
    let su2_coeff = |km: &KmAlgebra| word(km, "u_n ∈ su(2)", &[MatrixOp::CStar], false);
    let sl2r_coeff = |km: &KmAlgebra| word(km, "u_n ∈ sl(2,R)", &[MatrixOp::Conj], false);
    let iter_su2 =
        CoefficientMap::from_word("iⁿu_n ∈ su(2)", tw.finite(), &[MatrixOp::CStar], false, 2)
            .expect("map");
    for (label, conditions, rho, kmap, km) in [
        (
            "[Id,Id]",
            vec![su2_coeff(&untw)],
            &id,
            cstar_r(&untw),
            &untw,
        ),
        (
            "[Id,μ]",
            vec![sl2r_coeff(&tw), iter_su2],
            &mu,
            negt_r(&tw),
            &tw,
        ),
        ("[μ,μ]", vec![sl2r_coeff(&untw)], &mu, negt_r(&untw), &untw),
    ] {
        out.push(OsakaRecord {
            name: format!("III-{label}"),
            km: km.clone(),
            real_form: RealFormDescriptor::new(&format!("a₁⁽¹⁾{label}"), conditions)
                .expect("antilinear"),
            involution: InvolutionDescriptor::standard("ω", rho.clone(), true),
            claimed_type: Some(OsakaClass::III),
            expected_k: Some(ExpectedSpace::new(kmap.clone(), 1)),
            expected_p: Some(ExpectedSpace::new(kmap, -1)),
            dual_name: Some(format!("I-{label}")),
        });
    }

    // type IV: {(F, H) : H_n = −F̄_nᵀ} ≅ L(sl(2,C)) with ρ(F, H) = (F*, H*)
    let g_phi = word(
        &pair,
        "H_n = −F̄_nᵀ",
        &[MatrixOp::swap(2), MatrixOp::CStar],
        false,
    );
    let hexa = word(&pair, "(f, 0, f(−t), 0, 0, 0)", &[MatrixOp::CStar], true);
    out.push(OsakaRecord {
        name: "IV".into(),
        km: pair.clone(),
        real_form: RealFormDescriptor::new("G_φ", vec![g_phi]).expect("antilinear"),
        involution: InvolutionDescriptor::standard("ρ", swap, true),
        claimed_type: Some(OsakaClass::IV),
        expected_k: Some(ExpectedSpace::new(hexa.clone(), 1)),
        expected_p: Some(ExpectedSpace::new(hexa, -1)),
        dual_name: Some("II".into()),
    });
    out
}

/// `L̂(sl(2,C))` viewed as a real algebra with conjugation along the compact
/// form. Its fixed algebra contains `c` and `d`, so it is not an OSAKA.
pub fn complex_counterexample() -> OsakaRecord {
    let km = untwisted_su2();
    let cstar = auto(&km, &[MatrixOp::CStar], 2);
    OsakaRecord {
        name: "L̂(sl(2,C)) with compact conjugation".into(),
        real_form: RealFormDescriptor::new("L̂(sl(2,C))", Vec::new()).expect("empty"),
        involution: InvolutionDescriptor::standard("conjugation", cstar, false),
        km,
        claimed_type: None,
        expected_k: None,
        expected_p: None,
        dual_name: None,
    }
}

/// `(L̂(a), −Id)` for a real abelian `a` of dimension `k`. On `d` the map is
/// the identity, as `−Id` would not be a homomorphism there.
pub fn euclidean_example(k: usize) -> OsakaRecord {
    let km = KmAlgebra::new(LoopAlgebra::untwisted(&make_abelian(k, BaseField::Real)));
    let real = word(&km, "f real", &[MatrixOp::Conj], true);
    let minus = FiniteAutomorphism::identity(k).negated();
    OsakaRecord {
        name: format!("Euclidean(a, dim {k})"),
        real_form: RealFormDescriptor::new("L̂(a)", vec![real]).expect("antilinear"),
        involution: InvolutionDescriptor::standard("−Id", minus, false).with_epsilon(-1),
        km,
        claimed_type: Some(OsakaClass::Euclidean),
        expected_k: None,
        expected_p: None,
        dual_name: None,
    }
}

/// Blockwise product of I-[Id,Id] and I-[μ,μ] on `su(2)⊕su(2)`.
pub fn product_example() -> OsakaRecord {
    let km = pair_km();
    let block =
        |x: &CMatrix, top: &dyn Fn(&CMatrix) -> CMatrix, bottom: &dyn Fn(&CMatrix) -> CMatrix| {
            let mut a = CMatrix::zeros(2, 2);
            let mut b = CMatrix::zeros(2, 2);
            for i in 0..2 {
                for j in 0..2 {
                    a[(i, j)] = x[(i, j)].clone();
                    b[(i, j)] = x[(2 + i, 2 + j)].clone();
                }
            }
            CMatrix::block_diag(&top(&a), &bottom(&b))
        };
    let theta = FiniteAutomorphism::from_matrix_map(
        km.finite(),
        |x| block(x, &|a| a.clone(), &|b| MatrixOp::NegT.apply(b)),
        false,
        2,
    )
    .expect("blockwise");
    let kmat = FiniteAutomorphism::from_matrix_map(
        km.finite(),
        |x| {
            block(x, &|a| MatrixOp::CStar.apply(a), &|b| {
                MatrixOp::Conj.apply(b)
            })
        },
        true,
        2,
    )
    .expect("blockwise");
    let kmap = CoefficientMap::from_automorphism("K", &kmat, false, 0);
    OsakaRecord {
        name: "I-[Id,Id] ⊕ I-[μ,μ]".into(),
        real_form: compact_form(&km, "L̂(su(2)⊕su(2))"),
        involution: InvolutionDescriptor::standard("ρ[Id,Id]⊕ρ[μ,μ]", theta, true),
        km,
        claimed_type: Some(OsakaClass::I),
        expected_k: Some(ExpectedSpace::new(kmap.clone(), 1)),
        expected_p: Some(ExpectedSpace::new(kmap, -1)),
        dual_name: None,
    }
}

/// Compact form with an `ε = +1` involution (`f ↦ f`); its fixed algebra
/// contains `c`.
pub fn first_kind_example() -> OsakaRecord {
    let km = untwisted_su2();
    OsakaRecord {
        name: "L̂(su(2)) with the identity".into(),
        real_form: compact_form(&km, "L̂(su(2))"),
        involution: InvolutionDescriptor::standard("id", FiniteAutomorphism::identity(3), false),
        km,
        claimed_type: None,
        expected_k: None,
        expected_p: None,
        dual_name: None,
    }
}

/// Dimensions of the truncated `K` and `P`.
pub fn kp_dims(dec: &CartanDecomposition) -> (usize, usize) {
    (dec.k.dim(), dec.p.dim())
}

/// Subspace of a truncation cut out by an expected condition.
pub fn expected_subspace(rec: &OsakaRecord, e: &ExpectedSpace, n: i64) -> TruncSubspace {
    let t = Truncation::new(&rec.km, n);
    let mut eq: Vec<(&CoefficientMap, i8)> =
        rec.real_form.conditions.iter().map(|m| (m, 1)).collect();
    eq.push((&e.map, e.eigenvalue));
    t.solve(&eq, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::LoopElement;

    fn find<'a>(cat: &'a [OsakaRecord], name: &str) -> &'a OsakaRecord {
        cat.iter().find(|r| r.name == name).unwrap()
    }

    fn mat_coords(km: &KmAlgebra, rows: &[&[(i64, i64)]]) -> Coords {
        let m = CMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| Scalar::from_ints(a, b)).collect())
                .collect(),
        );
        km.finite().coords(&m).unwrap()
    }

    #[test]
    fn catalog_has_eight_records() {
        let cat = build_catalog_a1();
        assert_eq!(cat.len(), 8);
        let classes: Vec<_> = cat.iter().map(|r| r.claimed_type.unwrap()).collect();
        use OsakaClass::*;
        assert_eq!(classes, vec![I, I, I, II, III, III, III, IV]);
    }

    #[test]
    fn catalog_verifies_at_degree_two() {
        let cat = build_catalog_a1();
        for r in verify_all(&cat, 2) {
            assert!(r.passed(), "{}: {:?} {:?}", r.name, r.checks, r.notes);
            assert_eq!(r.effective, Some(Effectiveness::Effective));
            assert_eq!(r.irreducible, Some(Irreducibility::Irreducible));
        }
    }

    #[test]
    fn membership_examples() {
        let cat = build_catalog_a1();
        let idid = find(&cat, "III-[Id,Id]");
        let mumu = find(&cat, "III-[μ,μ]");
        let idmu = find(&cat, "III-[Id,μ]");
        let at1 = |km: &KmAlgebra, c: Coords| {
            ExtendedElement::from_loop(LoopElement::monomial(1, c, km.twist_order()))
        };
        let rot = mat_coords(&idid.km, &[&[(0, 0), (1, 0)], &[(-1, 0), (0, 0)]]);
        assert!(idid.real_form.contains(&at1(&idid.km, rot)));
        let h = mat_coords(&idid.km, &[&[(1, 0), (0, 0)], &[(0, 0), (-1, 0)]]);
        assert!(mumu.real_form.contains(&at1(&mumu.km, h.clone())));
        assert!(!idid.real_form.contains(&at1(&idid.km, h.clone())));
        // frequency 1/2 allows exactly the real symmetric traceless matrices
        assert!(idmu.real_form.contains(&at1(&idmu.km, h)));
        let sym = mat_coords(&idmu.km, &[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]);
        assert!(idmu.real_form.contains(&at1(&idmu.km, sym)));
        let isym = mat_coords(&idmu.km, &[&[(0, 0), (0, 1)], &[(0, 1), (0, 0)]]);
        assert!(!idmu.real_form.contains(&at1(&idmu.km, isym)));
        assert!(idid.real_form.contains(&idid.km.c().scale(&Scalar::i())));
        assert!(!idid.real_form.contains(&idid.km.c()));
    }

    #[test]
    fn type_two_fixed_algebra_is_a_loop_algebra() {
        let cat = build_catalog_a1();
        let ii = find(&cat, "II");
        for n in 0..=2i64 {
            let dec = ii.decomposition(n).unwrap();
            assert_eq!(dec.k.dim() as i64, 3 * (2 * n + 1));
            assert_eq!(dec.k.cd_dim(), 0);
        }
    }

    #[test]
    fn counterexample_fails_compactness() {
        let r = osaka_verify(&complex_counterexample(), 1);
        assert!(r.checks.closure && r.checks.involutive);
        assert!(!r.checks.fix_compact);
    }

    #[test]
    fn euclidean_example_passes() {
        let rec = euclidean_example(1);
        let r = osaka_verify(&rec, 2);
        assert!(r.passed(), "{:?}", r.notes);
        assert_eq!(r.osaka_type, Some(OsakaType::Euclidean));
        assert_eq!(r.effective, Some(Effectiveness::Effective));
        assert_eq!(r.irreducible, Some(Irreducibility::Irreducible));
        let two = euclidean_example(2);
        assert!(matches!(
            irreducibility_check(&two),
            Irreducibility::Reducible(_)
        ));
    }

    #[test]
    fn product_is_reducible() {
        let rec = product_example();
        let r = osaka_verify(&rec, 1);
        assert!(r.checks.all(), "{:?}", r.notes);
        assert!(matches!(r.irreducible, Some(Irreducibility::Reducible(_))));
    }

    #[test]
    fn first_kind_is_not_effective() {
        let e = effectiveness_check(&first_kind_example());
        assert_eq!(e.verdict, Effectiveness::NotEffective);
        assert_eq!(e.kind, Kind::FirstKind);
    }

    #[test]
    fn untwisted_conjugation_formula_is_an_osaka() {
        let km = untwisted_su2();
        let d = CMatrix::from_int_rows(&[&[1, 0], &[0, -1]]);
        let phi = auto(&km, &[MatrixOp::Ad(d), MatrixOp::Conj], 2);
        let rec = OsakaRecord {
            name: "Ad(diag(1,−1))·conj f(−t)".into(),
            real_form: compact_form(&km, "L̂(su(2))"),
            involution: InvolutionDescriptor::standard("ρ", phi, true),
            km,
            claimed_type: Some(OsakaClass::I),
            expected_k: None,
            expected_p: None,
            dual_name: None,
        };
        let r = osaka_verify(&rec, 2);
        assert!(r.passed(), "{:?}", r.notes);
    }

    #[test]
    fn counts() {
        let t = involution_counts();
        assert_eq!(t.lookup("e₈⁽¹⁾"), Ok(6));
        assert_eq!(t.lookup("g2^(1)"), Ok(3));
        assert_eq!(t.lookup("e7(1)"), Ok(10));
        assert!(t.lookup("a₂⁽¹⁾").is_err());
    }
}
