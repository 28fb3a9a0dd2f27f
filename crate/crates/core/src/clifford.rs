//! The canonical model of the Clifford torus `T² ⊂ CP²`.
//!
//! One-form inputs get the Maslov-2 boundary-pairing constants, the classical
//! part is the wedge product with unit `e`, and every remaining constant with an
//! `f_12` input is solved for, energy level by energy level, from the A∞
//! relations and cyclic symmetry.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::ainfty::{AInfinityStructure, ClassIndex, FiltrationMonoid, DEFAULT_CLASS_LIMIT};
use crate::basis::{GradedBasis, Letter};
use crate::chain::{symmetrize_n, ChainElement};
use crate::element::Vector;
use crate::error::{Error, Result};
use crate::field::FieldValue;
use crate::hochschild::cyclic_cycle_check;
use crate::linsolve::{LinForm, LinearSystem, Outcome, Var};
use crate::morphism::{transport, MorphismData};
use crate::novikov::{Energy, NovikovScalar};
use crate::pairing::{m_plus_chain, CyclicPairing};
use crate::report::Report;
use crate::sign::Sign;

pub const DEFAULT_K_MAX: usize = 4;

pub fn default_cap() -> Energy {
    Energy::from_int(2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscClass {
    pub name: String,
    /// `(∂β ∩ e_1, ∂β ∩ e_2)`.
    pub boundary: (i64, i64),
    pub area: Energy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscClassTable {
    pub classes: Vec<DiscClass>,
}

impl Default for DiscClassTable {
    /// The three basic discs, each of area 1.
    fn default() -> Self {
        let d = |name: &str, boundary| DiscClass {
            name: name.into(),
            boundary,
            area: Energy::from_int(1),
        };
        DiscClassTable {
            classes: vec![
                d("beta_0", (-1, -1)),
                d("beta_1", (1, 0)),
                d("beta_2", (0, 1)),
            ],
        }
    }
}

impl DiscClassTable {
    pub fn validate(&self) -> Result<()> {
        let (sx, sy) = self
            .classes
            .iter()
            .fold((0, 0), |(a, b), c| (a + c.boundary.0, b + c.boundary.1));
        if (sx, sy) != (0, 0) {
            return Err(Error::Input(format!(
                "boundary vectors sum to ({sx},{sy}), not zero"
            )));
        }
        if let Some(c) = self
            .classes
            .iter()
            .find(|c| c.area.is_zero() || c.area.is_negative())
        {
            return Err(Error::Input(format!(
                "class {} has nonpositive area",
                c.name
            )));
        }
        Ok(())
    }

    pub fn class_index(c: &DiscClass) -> ClassIndex {
        ClassIndex::new(c.area.clone(), 2)
    }
}

/// A four-dimensional presentation `unit, g_1, g_2, top` with `top = m_{2,0}(g_1, g_2)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub basis: GradedBasis,
    pub unit: Letter,
    pub g1: Letter,
    pub g2: Letter,
    pub top: Letter,
}

impl Presentation {
    fn with_names(unit: &str, g1: &str, g2: &str, top: &str) -> Self {
        let basis =
            GradedBasis::from_pairs(&[(unit, 0), (g1, 1), (g2, 1), (top, 2)]).expect("valid basis");
        Presentation {
            unit: Letter(0),
            g1: Letter(1),
            g2: Letter(2),
            top: Letter(3),
            basis,
        }
    }

    /// Eigenbasis `e, f_1, f_2, f_12` of the Hessian.
    pub fn f_basis() -> Self {
        Presentation::with_names("e", "f_1", "f_2", "f_12")
    }

    /// Harmonic basis `e, e_1, e_2, e_12`.
    pub fn e_basis() -> Self {
        Presentation::with_names("e", "e_1", "e_2", "e_12")
    }

    pub fn letter(&self, name: &str) -> Letter {
        self.basis.letter(name).expect("known letter")
    }

    /// `m_{2,0}(a, b) = (−1)^{deg a} a ∧ b` with `top = m_{2,0}(g_1, g_2)`.
    pub fn wedge(&self, a: Letter, b: Letter) -> Vector {
        let u = self.unit;
        if a == u {
            return Vector::basis(b);
        }
        if b == u {
            let odd = self.basis.degree(a) % 2 != 0;
            return Vector::term(a, FieldValue::one().signed(odd));
        }
        if (a, b) == (self.g1, self.g2) {
            Vector::basis(self.top)
        } else if (a, b) == (self.g2, self.g1) {
            Vector::term(self.top, -FieldValue::one())
        } else {
            Vector::zero()
        }
    }
}

/// `∂β ∩ f_1 = (b_1 + b_2)/√2` and `∂β ∩ f_2 = (b_1 − b_2)/√2`.
fn f_coordinates(boundary: (i64, i64)) -> [FieldValue; 2] {
    let s = FieldValue::inv_sqrt2();
    [
        &FieldValue::from_int(boundary.0 + boundary.1) * &s,
        &FieldValue::from_int(boundary.0 - boundary.1) * &s,
    ]
}

fn e_coordinates(boundary: (i64, i64)) -> [FieldValue; 2] {
    [
        FieldValue::from_int(boundary.0),
        FieldValue::from_int(boundary.1),
    ]
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinates {
    Harmonic,
    Eigen,
}

/// `m_{k,β}(g_{i_1}, …, g_{i_k}) = (1/k!) Σ_{discs in β} ∏ (∂β ∩ g_{i_s}) · e` for
/// all one-form words of length `0..=k_max`; discs sharing a class index are summed.
pub fn build_maslov2_constants(
    table: &DiscClassTable,
    k_max: usize,
    pres: &Presentation,
    coords: Coordinates,
) -> Result<BTreeMap<(ClassIndex, Vec<Letter>), Vector>> {
    table.validate()?;
    let mut out: BTreeMap<(ClassIndex, Vec<Letter>), Vector> = BTreeMap::new();
    let gens = [pres.g1, pres.g2];
    for disc in &table.classes {
        let class = DiscClassTable::class_index(disc);
        let c = match coords {
            Coordinates::Harmonic => e_coordinates(disc.boundary),
            Coordinates::Eigen => f_coordinates(disc.boundary),
        };
        for k in 0..=k_max {
            let inv = FieldValue::from_ratio(1, factorial(k));
            let mut words: Vec<Vec<usize>> = vec![Vec::new()];
            for _ in 0..k {
                words = words
                    .into_iter()
                    .flat_map(|w| {
                        (0..2).map(move |i| {
                            let mut w2 = w.clone();
                            w2.push(i);
                            w2
                        })
                    })
                    .collect();
            }
            for w in words {
                let mut coeff = inv.clone();
                for &i in &w {
                    coeff = &coeff * &c[i];
                }
                let letters: Vec<Letter> = w.iter().map(|&i| gens[i]).collect();
                out.entry((class.clone(), letters))
                    .or_default()
                    .add_term(pres.unit, coeff);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// How a stored constant was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Classical wedge product or unit law.
    Classical,
    /// Boundary-pairing formula for one-form inputs.
    Formula,
    /// Uniquely determined by the constraint system.
    Solved,
    /// Depends on a free parameter that was set to zero.
    Free,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProvenanceEntry {
    pub class: ClassIndex,
    pub inputs: Vec<String>,
    pub value: String,
    pub provenance: Provenance,
}

/// A constant quoted in the literature next to the solver's value.
#[derive(Clone, Debug, Serialize)]
pub struct ReferenceCheck {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub matches: bool,
}

type SymVec = BTreeMap<Letter, LinForm>;

fn sym_from_vector(v: &Vector) -> SymVec {
    v.iter()
        .map(|(l, c)| (l, LinForm::constant(c.clone())))
        .collect()
}

fn add_into(target: &mut SymVec, l: Letter, f: &LinForm, c: &FieldValue) {
    let slot = target.entry(l).or_default();
    slot.add_scaled(f, c);
    if slot.is_zero() {
        target.remove(&l);
    }
}

struct Unknown {
    class: ClassIndex,
    word: Vec<Letter>,
    output: Letter,
}

struct Solver<'a> {
    pres: &'a Presentation,
    pairing: &'a CyclicPairing,
    classes: Vec<ClassIndex>,
    k_max: usize,
    store: HashMap<(ClassIndex, Vec<Letter>), SymVec>,
    unknowns: Vec<Unknown>,
}

impl Solver<'_> {
    fn get(&self, class: &ClassIndex, word: &[Letter]) -> Option<&SymVec> {
        self.store.get(&(class.clone(), word.to_vec()))
    }

    fn describe(&self, v: Var) -> String {
        let u = &self.unknowns[v];
        format!(
            "m_{{{},{}}}({})[{}]",
            u.word.len(),
            u.class,
            self.pres.basis.format_word(&u.word),
            self.pres.basis.name(u.output)
        )
    }

    /// Energy-`level` component of `m(m̂(word))`, one form per output letter.
    fn relation(&self, word: &[Letter], level: &Energy) -> Result<SymVec> {
        let b = &self.pres.basis;
        let n = word.len();
        let mut out = SymVec::new();
        for k in 1..=n {
            let mut prefix: i64 = 0;
            for i in 0..=(n - k) {
                let sign = FieldValue::one().signed(Sign::pow(prefix).is_negative());
                for inner_class in &self.classes {
                    let Some(inner) = self.get(inner_class, &word[i..i + k]) else {
                        continue;
                    };
                    for outer_class in &self.classes {
                        if &(&outer_class.energy + &inner_class.energy) != level {
                            continue;
                        }
                        for (y, a) in inner {
                            let mut ow = word[..i].to_vec();
                            ow.push(*y);
                            ow.extend_from_slice(&word[i + k..]);
                            let Some(outer) = self.get(outer_class, &ow) else {
                                continue;
                            };
                            for (z, f) in outer {
                                add_into(&mut out, *z, &a.mul(f)?, &sign);
                            }
                        }
                    }
                }
                prefix += b.shifted(word[i]) as i64;
            }
        }
        Ok(out)
    }

    fn pair_with(&self, v: Option<&SymVec>, x: Letter) -> LinForm {
        let mut f = LinForm::zero();
        if let Some(v) = v {
            for (l, form) in v {
                let p = self.pairing.entry(*l, x);
                if !p.is_zero() {
                    f.add_scaled(form, &p);
                }
            }
        }
        f
    }

    fn cyclic_equation(&self, class: &ClassIndex, w: &[Letter]) -> LinForm {
        let b = &self.pres.basis;
        let k = w.len() - 1;
        let mut f = self.pair_with(self.get(class, &w[..k]), w[k]);
        let sign = Sign::pow(b.shifted(w[0]) as i64 * b.shifted_sum(&w[1..]) as i64);
        let rhs = self.pair_with(self.get(class, &w[1..]), w[0]);
        f.add_scaled(&rhs, &FieldValue::one().signed(!sign.is_negative()));
        f
    }
}

/// The completed model together with its bookkeeping.
#[derive(Clone, Debug)]
pub struct CliffordModel {
    pub table: DiscClassTable,
    pub presentation: Presentation,
    /// Full structure including `m_0`.
    pub structure: AInfinityStructure,
    pub pairing: CyclicPairing,
    pub provenance: Vec<ProvenanceEntry>,
    pub solve_report: Report,
}

/// `⟨f_1,f_2⟩ = 1 = −⟨f_2,f_1⟩`, `⟨e,f_12⟩ = ⟨f_12,e⟩ = 1`.
pub fn standard_pairing(pres: &Presentation) -> CyclicPairing {
    CyclicPairing::new(
        pres.basis.clone(),
        [
            ((pres.g1, pres.g2), FieldValue::one()),
            ((pres.g2, pres.g1), -FieldValue::one()),
            ((pres.unit, pres.top), FieldValue::one()),
            ((pres.top, pres.unit), FieldValue::one()),
        ],
    )
    .expect("standard pairing is nondegenerate")
}

/// Builds the model in the eigenbasis and solves for every constant with an
/// `f_12` input up to arity `k_max` and energy `cap`.
pub fn complete_constants(
    table: &DiscClassTable,
    k_max: usize,
    cap: &Energy,
) -> Result<CliffordModel> {
    let pres = Presentation::f_basis();
    let pairing = standard_pairing(&pres);
    let b = pres.basis.clone();

    let generators = FiltrationMonoid::new(table.classes.iter().map(DiscClassTable::class_index));
    let classes: Vec<ClassIndex> = generators
        .closure(cap, DEFAULT_CLASS_LIMIT)
        .ok_or_else(|| Error::Resource("class closure too large".into()))?
        .into_iter()
        .collect();

    let mut store: HashMap<(ClassIndex, Vec<Letter>), SymVec> = HashMap::new();
    let mut provenance: BTreeMap<(ClassIndex, Vec<Letter>), Provenance> = BTreeMap::new();
    let zero = ClassIndex::zero();
    for x in b.letters() {
        for y in b.letters() {
            let v = pres.wedge(x, y);
            provenance.insert((zero.clone(), vec![x, y]), Provenance::Classical);
            if !v.is_zero() {
                store.insert((zero.clone(), vec![x, y]), sym_from_vector(&v));
            }
        }
    }
    let formula = build_maslov2_constants(table, k_max, &pres, Coordinates::Eigen)?;
    let mut m0: Vec<(ClassIndex, Vector)> = Vec::new();
    for ((class, word), v) in &formula {
        provenance.insert((class.clone(), word.clone()), Provenance::Formula);
        if word.is_empty() {
            m0.push((class.clone(), v.clone()));
        } else if word.len() >= 2 {
            store.insert((class.clone(), word.clone()), sym_from_vector(v));
        } else if !v.is_zero() {
            return Err(Error::Inconsistent(format!(
                "m_1 on {} is nonzero; the canonical model needs m_1 = 0",
                b.format_word(word)
            )));
        }
    }

    // Unknowns: words free of the unit, containing the top class, arity 2..=k_max.
    let mut unknowns: Vec<Unknown> = Vec::new();
    for class in classes.iter().filter(|c| !c.is_zero()) {
        for k in 2..=k_max {
            for w in b.words(k) {
                if w.contains(&pres.unit) || !w.contains(&pres.top) {
                    continue;
                }
                let deg = b.degree_sum(&w) + 2 - k as i32 - class.maslov;
                let mut sym = SymVec::new();
                for out in b.letters_of_degree(deg) {
                    sym.insert(out, LinForm::var(unknowns.len()));
                    unknowns.push(Unknown {
                        class: class.clone(),
                        word: w.clone(),
                        output: out,
                    });
                }
                provenance.insert((class.clone(), w.clone()), Provenance::Solved);
                if !sym.is_empty() {
                    store.insert((class.clone(), w), sym);
                }
            }
        }
    }

    let mut solver = Solver {
        pres: &pres,
        pairing: &pairing,
        classes: classes.clone(),
        k_max,
        store,
        unknowns,
    };
    let mut report = Report::new("complete_constants");
    let mut free_vars = Vec::new();
    let mut levels: Vec<Energy> = classes.iter().map(|c| c.energy.clone()).collect();
    levels.dedup();
    for level in levels.iter().filter(|e| !e.is_zero()) {
        let vars: Vec<Var> = (0..solver.unknowns.len())
            .filter(|&v| &solver.unknowns[v].class.energy == level)
            .collect();
        let mut system = LinearSystem::new();
        let mut add = |form: &LinForm, label: String, report: &mut Report| -> Result<()> {
            match system.add(form) {
                Outcome::Inconsistent(residue) => Err(Error::Inconsistent(format!(
                    "{label} leaves residue {residue} at energy {level}"
                ))),
                _ => {
                    report.record_ok();
                    Ok(())
                }
            }
        };
        for n in 1..=solver.k_max {
            for w in b.words(n) {
                for (z, form) in solver.relation(&w, level)? {
                    let label = format!("m∘m̂({})[{}]", b.format_word(&w), b.name(z));
                    add(&form, label, &mut report)?;
                }
            }
        }
        for class in classes.iter().filter(|c| &c.energy == level) {
            for n in 2..=solver.k_max + 1 {
                for w in b.words(n) {
                    let form = solver.cyclic_equation(class, &w);
                    if !form.is_zero() {
                        let label = format!("cyclic symmetry at {} @ {class}", b.format_word(&w));
                        add(&form, label, &mut report)?;
                    }
                }
            }
        }
        let solution = system.solve(vars.iter().copied());
        report.note(format!(
            "energy {level}: {} unknowns, {} equations, rank {}, {} free",
            vars.len(),
            system.equations(),
            system.rank(),
            solution.free.len()
        ));
        for &v in &solution.free {
            report.note(format!(
                "warning: free parameter {} set to 0",
                solver.describe(v)
            ));
            free_vars.push(v);
        }
        for v in vars.iter().filter(|v| !solution.unique.contains(v)) {
            let u = &solver.unknowns[*v];
            provenance.insert((u.class.clone(), u.word.clone()), Provenance::Free);
        }
        for sym in solver.store.values_mut() {
            for form in sym.values_mut() {
                *form = form.substitute(&solution.values);
            }
            sym.retain(|_, f| !f.is_zero());
        }
    }

    let mut structure = AInfinityStructure::new(b.clone(), Some(pres.unit), cap.clone(), k_max);
    for class in &classes {
        structure.declare_class(class.clone())?;
    }
    let mut entries: Vec<_> = solver.store.iter().collect();
    entries.sort_by(|a, b| a.0.cmp(b.0));
    for ((class, word), sym) in entries {
        let mut v = Vector::zero();
        for (l, f) in sym {
            if !f.is_constant() {
                return Err(Error::Inconsistent(format!(
                    "constant m({}) left undetermined",
                    b.format_word(word)
                )));
            }
            v.add_term(*l, f.constant.clone());
        }
        structure.set(class, word, v)?;
    }
    for (class, v) in m0 {
        structure.set(&class, &[], v)?;
    }

    let provenance = provenance
        .into_iter()
        .filter_map(|((class, word), tag)| {
            let value = structure.op_vector(&class, &word).ok()?;
            if value.is_zero() && tag != Provenance::Free {
                return None;
            }
            Some(ProvenanceEntry {
                inputs: word.iter().map(|&l| b.name(l).to_string()).collect(),
                value: value.format(&b),
                class,
                provenance: tag,
            })
        })
        .collect();
    Ok(CliffordModel {
        table: table.clone(),
        presentation: pres,
        structure,
        pairing,
        provenance,
        solve_report: report,
    })
}

/// Results of evaluating `m⁺` on `α`.
#[derive(Clone, Debug)]
pub struct AlphaEvaluation {
    pub value: NovikovScalar,
    pub third: NovikovScalar,
    pub groups: [NovikovScalar; 3],
    pub cycle: Report,
}

impl fmt::Display for AlphaEvaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m⁺(α) = {}, m⁺(α/3) = {}", self.value, self.third)
    }
}

impl CliffordModel {
    pub fn build() -> Result<Self> {
        complete_constants(&DiscClassTable::default(), DEFAULT_K_MAX, &default_cap())
    }

    /// `m_0` replaced by zero; all homological checks use this view.
    pub fn reduced(&self) -> AInfinityStructure {
        self.structure.reduced()
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.presentation.basis
    }

    pub fn letter(&self, name: &str) -> Letter {
        self.presentation.letter(name)
    }

    pub fn energy_one(&self) -> ClassIndex {
        ClassIndex::new(Energy::from_int(1), 2)
    }

    /// The three groups of `α`, before summation.
    pub fn alpha_groups(&self) -> [ChainElement; 3] {
        let b = self.basis();
        let cap = self.structure.cap();
        let (e, f1, f2, f12) = (
            self.letter("e"),
            self.letter("f_1"),
            self.letter("f_2"),
            self.letter("f_12"),
        );
        let n = |w: Vec<Letter>, coeff: NovikovScalar| {
            let mut c = ChainElement::zero(cap);
            c.add_word(w, coeff);
            symmetrize_n(b, &c)
        };
        [
            n(vec![f1, f1, f12], NovikovScalar::one(cap)),
            n(
                vec![f2, f2, f12],
                NovikovScalar::constant(FieldValue::from_int(3), cap),
            ),
            n(
                vec![e, f1, f2],
                NovikovScalar::monomial(FieldValue::from_int(3), Energy::from_int(1), cap),
            ),
        ]
    }

    /// `α = N_3(f_1 f_1 f_12) + 3 N_3(f_2 f_2 f_12) + 3 N_3(e f_1 f_2) T`.
    pub fn build_alpha(&self) -> ChainElement {
        let [a, b, c] = self.alpha_groups();
        a.plus(&b).plus(&c)
    }

    pub fn evaluate_alpha(&self) -> Result<AlphaEvaluation> {
        let s = self.reduced();
        let alpha = self.build_alpha();
        let value = m_plus_chain(&s, &self.pairing, &alpha)?;
        let third = m_plus_chain(
            &s,
            &self.pairing,
            &alpha.scaled_field(&FieldValue::from_ratio(1, 3)),
        )?;
        let groups = self.alpha_groups();
        let g = [
            m_plus_chain(&s, &self.pairing, &groups[0])?,
            m_plus_chain(&s, &self.pairing, &groups[1])?,
            m_plus_chain(&s, &self.pairing, &groups[2])?,
        ];
        Ok(AlphaEvaluation {
            value,
            third,
            groups: g,
            cycle: cyclic_cycle_check(&s, &alpha),
        })
    }

    /// The quoted constants next to the solved ones. The two displayed signs of
    /// `m_3(f_12,f_1,f_1)` are listed separately.
    pub fn reference_checks(&self) -> Vec<ReferenceCheck> {
        let b = self.basis();
        let s = &self.structure;
        let q = self.energy_one();
        let zero = ClassIndex::zero();
        let l = |n: &str| self.letter(n);
        let (e, f1, f2, f12) = (l("e"), l("f_1"), l("f_2"), l("f_12"));
        let r = |n, d| FieldValue::from_ratio(n, d);
        let sq = |n, d| &FieldValue::sqrt2() * &FieldValue::from_ratio(n, d);
        let cases: Vec<(&str, ClassIndex, Vec<Letter>, Vector)> = vec![
            (
                "m_2(f_1,f_1) = 3/2 T e",
                q.clone(),
                vec![f1, f1],
                Vector::term(e, r(3, 2)),
            ),
            (
                "m_2(f_2,f_2) = 1/2 T e",
                q.clone(),
                vec![f2, f2],
                Vector::term(e, r(1, 2)),
            ),
            (
                "m_2(f_1,f_2) = f_12",
                zero.clone(),
                vec![f1, f2],
                Vector::basis(f12),
            ),
            (
                "m_2(f_2,f_1) = -f_12",
                zero,
                vec![f2, f1],
                Vector::term(f12, r(-1, 1)),
            ),
            (
                "m_2(f_12,f_1) = -3/2 f_2 T",
                q.clone(),
                vec![f12, f1],
                Vector::term(f2, r(-3, 2)),
            ),
            (
                "m_2(f_12,f_2) = 1/2 f_1 T",
                q.clone(),
                vec![f12, f2],
                Vector::term(f1, r(1, 2)),
            ),
            (
                "m_2(f_1,f_12) = -3/2 f_2 T",
                q.clone(),
                vec![f1, f12],
                Vector::term(f2, r(-3, 2)),
            ),
            (
                "m_2(f_2,f_12) = 1/2 f_1 T",
                q.clone(),
                vec![f2, f12],
                Vector::term(f1, r(1, 2)),
            ),
            (
                "m_3(f_12,f_1,f_1) = +√2/4 f_2 T (first display)",
                q.clone(),
                vec![f12, f1, f1],
                Vector::term(f2, sq(1, 4)),
            ),
            (
                "m_3(f_12,f_1,f_1) = -√2/4 f_2 T (second display)",
                q.clone(),
                vec![f12, f1, f1],
                Vector::term(f2, sq(-1, 4)),
            ),
            (
                "m_3(f_12,f_2,f_2) = -√2/12 f_2 T",
                q.clone(),
                vec![f12, f2, f2],
                Vector::term(f2, sq(-1, 12)),
            ),
            (
                "m_3(f_2,f_12,f_2) = -√2/12 f_2 T",
                q.clone(),
                vec![f2, f12, f2],
                Vector::term(f2, sq(-1, 12)),
            ),
            (
                "m_3(f_2,f_2,f_12) = -√2/12 f_2 T",
                q.clone(),
                vec![f2, f2, f12],
                Vector::term(f2, sq(-1, 12)),
            ),
            ("m_3(e,f_1,f_2) = 0", q, vec![e, f1, f2], Vector::zero()),
        ];
        cases
            .into_iter()
            .map(|(label, class, word, want)| {
                let got = s.op_vector(&class, &word).unwrap_or_default();
                ReferenceCheck {
                    label: label.to_string(),
                    expected: want.format(b),
                    actual: got.format(b),
                    matches: got == want,
                }
            })
            .collect()
    }

    /// The harmonic presentation with the strict isomorphisms to and from the
    /// eigenbasis model: `e_1 ↦ (f_1+f_2)/√2`, `e_2 ↦ (f_1−f_2)/√2`, `e_12 ↦ −f_12`.
    /// The inverse has the same matrix.
    pub fn e_model(&self) -> Result<HarmonicModel> {
        let ep = Presentation::e_basis();
        let fp = &self.presentation;
        let map = |to: &Presentation| {
            let s = FieldValue::inv_sqrt2();
            let (u, g1, g2, top) = (to.unit, to.g1, to.g2, to.top);
            move |l: Letter| -> Vector {
                match l.0 {
                    0 => Vector::basis(u),
                    1 => Vector::from_terms([(g1, s.clone()), (g2, s.clone())]),
                    2 => Vector::from_terms([(g1, s.clone()), (g2, -s.clone())]),
                    _ => Vector::term(top, -FieldValue::one()),
                }
            }
        };
        let (to_f, to_e) = (map(fp), map(&ep));
        let (structure, pairing) = transport(
            &self.reduced(),
            &self.pairing,
            ep.basis.clone(),
            Some(ep.unit),
            &to_f,
            &to_e,
        )?;
        let cap = self.structure.cap().clone();
        let to_f_morphism = MorphismData::strict(
            ep.basis.clone(),
            fp.basis.clone(),
            cap.clone(),
            ep.basis.letters().map(|l| (l, to_f(l))),
        )?;
        let from_f_morphism = MorphismData::strict(
            fp.basis.clone(),
            ep.basis.clone(),
            cap,
            fp.basis.letters().map(|l| (l, to_e(l))),
        )?;
        Ok(HarmonicModel {
            presentation: ep,
            structure,
            pairing,
            to_f: to_f_morphism,
            from_f: from_f_morphism,
        })
    }

    /// `f_1 ↦ λ f_1`, `f_2 ↦ λ^{-1} f_2`: keeps the pairing, breaks the products.
    pub fn scaling_morphism(&self, lambda: &FieldValue) -> Result<MorphismData> {
        let p = &self.presentation;
        let inv = lambda
            .inverse()
            .ok_or_else(|| Error::Input("scaling by zero".into()))?;
        MorphismData::strict(
            p.basis.clone(),
            p.basis.clone(),
            self.structure.cap().clone(),
            [
                (p.unit, Vector::basis(p.unit)),
                (p.g1, Vector::term(p.g1, lambda.clone())),
                (p.g2, Vector::term(p.g2, inv)),
                (p.top, Vector::basis(p.top)),
            ],
        )
    }
}

/// The model in the harmonic basis `e, e_1, e_2, e_12`.
#[derive(Clone, Debug)]
pub struct HarmonicModel {
    pub presentation: Presentation,
    pub structure: AInfinityStructure,
    pub pairing: CyclicPairing,
    /// Harmonic to eigenbasis.
    pub to_f: MorphismData,
    /// Eigenbasis to harmonic.
    pub from_f: MorphismData,
}

/// Exact check of the Clifford relation `e_i e_j + e_j e_i = H_ij T` in the
/// harmonic presentation, with `H = [[2,1],[1,2]]`.
pub fn clifford_relation(s: &AInfinityStructure) -> Report {
    let mut r = Report::new("clifford_relation");
    let b = s.basis();
    let cap = s.cap();
    let h = [[2, 1], [1, 2]];
    let g = [Letter(1), Letter(2)];
    let unit = Letter(0);
    for i in 0..2 {
        for j in 0..2 {
            let res = s.apply_word(&[g[i], g[j]]).and_then(|mut a| {
                a.add(&s.apply_word(&[g[j], g[i]])?);
                Ok(a)
            });
            let want =
                NovikovScalar::monomial(FieldValue::from_int(h[i][j]), Energy::from_int(1), cap);
            match res {
                Ok(v) if v.coeff(unit) == want && v.iter().count() == 1 => r.record_ok(),
                Ok(v) => r.record_failure(
                    format!(
                        "{}{} + {}{}",
                        b.name(g[i]),
                        b.name(g[j]),
                        b.name(g[j]),
                        b.name(g[i])
                    ),
                    v.format(b),
                ),
                Err(e) => r.record_failure("product", e.to_string()),
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ainfty::verify_gapped;
    use crate::chain::TensorWord;
    use crate::hochschild::{d_hoch_chain_with, d_hoch_with, WrapSign};
    use crate::morphism::{verify_cyclic_homomorphism, verify_homomorphism, verify_prop45};
    use crate::pairing::{verify_cyclic_symmetry, verify_stokes};

    fn t1(c: FieldValue, cap: &Energy) -> NovikovScalar {
        NovikovScalar::monomial(c, Energy::from_int(1), cap)
    }

    #[test]
    fn default_table_is_valid() {
        DiscClassTable::default().validate().unwrap();
        let mut bad = DiscClassTable::default();
        bad.classes[0].boundary = (0, 0);
        assert!(bad.validate().is_err());
        bad = DiscClassTable::default();
        bad.classes[1].area = Energy::zero();
        assert!(bad.validate().is_err());
    }

    #[test]
    fn formula_constants() {
        let pres = Presentation::f_basis();
        let c = build_maslov2_constants(&DiscClassTable::default(), 2, &pres, Coordinates::Eigen)
            .unwrap();
        let q = ClassIndex::new(Energy::from_int(1), 2);
        assert_eq!(
            c[&(q.clone(), vec![])],
            Vector::term(pres.unit, FieldValue::from_int(3))
        );
        assert!(!c.contains_key(&(q.clone(), vec![pres.g1])));
        assert!(!c.contains_key(&(q.clone(), vec![pres.g1, pres.g2])));
        assert_eq!(
            c[&(q.clone(), vec![pres.g1, pres.g1])],
            Vector::term(pres.unit, FieldValue::from_ratio(3, 2))
        );
        assert_eq!(
            c[&(q, vec![pres.g2, pres.g2])],
            Vector::term(pres.unit, FieldValue::from_ratio(1, 2))
        );
    }

    #[test]
    fn wedge_signs() {
        let p = Presentation::f_basis();
        assert_eq!(
            p.wedge(p.g1, p.unit),
            Vector::term(p.g1, -FieldValue::one())
        );
        assert_eq!(p.wedge(p.top, p.unit), Vector::basis(p.top));
        assert_eq!(p.wedge(p.g2, p.g1), Vector::term(p.top, -FieldValue::one()));
        assert!(p.wedge(p.g1, p.top).is_zero());
    }

    #[test]
    fn model_is_cyclic_unital_ainfty() {
        let m = CliffordModel::build().unwrap();
        let s = m.reduced();
        assert!(s.verify_ainfty(4).passed);
        assert!(m.structure.verify_unit().passed);
        assert!(verify_cyclic_symmetry(&s, &m.pairing, 4).passed);
        assert!(verify_stokes(&s, &m.pairing).passed);
        assert!(verify_gapped(&s.monoid(), s.cap(), DEFAULT_CLASS_LIMIT).passed);
        assert_eq!(s.classes().len(), 3);
    }

    #[test]
    fn quoted_constants_and_sign_resolution() {
        let m = CliffordModel::build().unwrap();
        let checks = m.reference_checks();
        let display: Vec<_> = checks
            .iter()
            .filter(|c| c.label.contains("display"))
            .collect();
        assert_eq!(display.iter().filter(|c| c.matches).count(), 1);
        assert!(display[0].matches, "first display sign");
        assert!(checks
            .iter()
            .filter(|c| !c.label.contains("display"))
            .all(|c| c.matches));
    }

    #[test]
    fn free_parameters_stay_off_alpha() {
        let m = CliffordModel::build().unwrap();
        let free: Vec<_> = m
            .provenance
            .iter()
            .filter(|p| p.provenance == Provenance::Free)
            .collect();
        assert!(free
            .iter()
            .all(|p| p.inputs.len() == 4 && p.class.energy == Energy::from_int(2)));
        assert!(m
            .provenance
            .iter()
            .filter(|p| p.inputs.len() <= 3)
            .all(|p| p.provenance != Provenance::Free));
    }

    #[test]
    fn alpha_value() {
        let m = CliffordModel::build().unwrap();
        let cap = m.structure.cap().clone();
        let a = m.evaluate_alpha().unwrap();
        assert_eq!(a.value, t1(FieldValue::from_int(18), &cap));
        assert_eq!(a.third, t1(FieldValue::from_int(6), &cap));
        assert_eq!(a.groups[0], t1(FieldValue::from_ratio(9, 2), &cap));
        assert_eq!(a.groups[1], t1(FieldValue::from_ratio(9, 2), &cap));
        assert_eq!(a.groups[2], t1(FieldValue::from_int(9), &cap));
        assert!(a.cycle.passed, "{}", a.cycle);
    }

    #[test]
    fn rotation_wrap_sign_squares_to_zero() {
        let m = CliffordModel::build().unwrap();
        let s = m.reduced();
        let b = m.basis();
        let mut truncated_failures = 0;
        for n in 1..=4 {
            for w in b.words(n) {
                let tw = TensorWord::unit(w, s.cap()).unwrap();
                let d = d_hoch_with(&s, &tw, WrapSign::Rotation).unwrap();
                assert!(d_hoch_chain_with(&s, &d, WrapSign::Rotation)
                    .unwrap()
                    .is_zero());
                let d = d_hoch_with(&s, &tw, WrapSign::Truncated).unwrap();
                if !d_hoch_chain_with(&s, &d, WrapSign::Truncated)
                    .unwrap()
                    .is_zero()
                {
                    truncated_failures += 1;
                }
            }
        }
        assert!(truncated_failures > 0);
    }

    #[test]
    fn harmonic_model() {
        let m = CliffordModel::build().unwrap();
        let hm = m.e_model().unwrap();
        let f = m.reduced();
        assert!(hm.structure.verify_ainfty(3).passed);
        assert!(clifford_relation(&hm.structure).passed);
        assert!(verify_homomorphism(&hm.to_f, &hm.structure, &f, 3).passed);
        assert!(verify_homomorphism(&hm.from_f, &f, &hm.structure, 3).passed);
        assert!(verify_cyclic_homomorphism(&hm.to_f, &hm.pairing, &m.pairing, 4, false).passed);
        let p = &hm.presentation;
        assert_eq!(hm.pairing.entry(p.g1, p.g2), -FieldValue::one());
        // One-form constants agree with the formula in harmonic coordinates.
        let formula = build_maslov2_constants(&m.table, 3, p, Coordinates::Harmonic).unwrap();
        for ((class, word), v) in formula.iter().filter(|((_, w), _)| !w.is_empty()) {
            assert_eq!(
                &hm.structure.op_vector(class, word).unwrap(),
                v,
                "{}",
                p.basis.format_word(word)
            );
        }
        let alpha = m.build_alpha();
        assert!(
            verify_prop45(
                &hm.from_f,
                (&f, &m.pairing),
                (&hm.structure, &hm.pairing),
                &[alpha]
            )
            .passed
        );
    }

    #[test]
    fn scaling_is_not_a_homomorphism() {
        let m = CliffordModel::build().unwrap();
        let s = m.reduced();
        let h = m.scaling_morphism(&FieldValue::from_int(2)).unwrap();
        assert!(!verify_homomorphism(&h, &s, &s, 2).passed);
        assert!(verify_cyclic_homomorphism(&h, &m.pairing, &m.pairing, 3, false).passed);
    }
}
