use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::config::{
    matrix, scalars, ComparisonName, ConfigError, Expect, GeneratorSpec, KoszulExpect, MapExpect, MapTarget,
    RegularName, Scenario, Task, VerdictName,
};
use crate::derivation::derivation_apply;
use crate::error::{Error, Result};
use crate::ideals::{
    default_headroom, graded_comparison, jacobian_rank_at, koszul_reduce, map_preserves_ideal, regular_sequence_check,
    truncated_membership, Comparison, FiberIdeal, GradedIdeal, IdealRef, Membership, Preservation, RegSeqVerdict,
    TruncatedMembership,
};
use crate::invariants::{self, GeneratorSet, WeightSystem};
use crate::liealg::{nilpotent_part, reductivity_verdict, MatrixLieAlgebra, ReductivityVerdict};
use crate::matrix::{AffineMap, Matrix};
use crate::poly::{Polynomial, VarNames};
use crate::scalar::{format_scalar, Scalar};
use crate::stabilizer::{
    affine_stabilizer_algebra, annihilates, commutant_check, field_preserves_fiber, ideal_stabilizer_algebra,
    linear_fiber_stabilizer, preserves_ideal, StabilizerResult,
};

pub type MatrixText = Vec<Vec<String>>;

fn matrix_text(m: &Matrix) -> MatrixText {
    m.to_string_rows()
}

fn scalar_texts(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantsOutput {
    pub source: String,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    pub degrees: Vec<usize>,
    /// Weight systems: every invariant monomial up to the degree bound is a
    /// product of the generators.
    pub generation_complete: Option<bool>,
    /// Classical families: every generator is killed by the Lie algebra action.
    pub invariant: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceDim {
    pub degree: usize,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberOutput {
    pub polynomial: String,
    /// `member`, `not-member` or `undetermined`.
    pub outcome: String,
    pub certificate: Option<Vec<String>>,
    pub residual: Option<String>,
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NullconeOutput {
    pub pieces: Vec<PieceDim>,
    pub members: Vec<MemberOutput>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraOutput {
    pub dimension: usize,
    pub closed: bool,
    /// Every basis element re-satisfies the defining constraints.
    pub verified: bool,
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub basis: Vec<MatrixText>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerOutput {
    pub g0: AlgebraOutput,
    pub h0: AlgebraOutput,
    pub g0_in_h0: bool,
    pub identity_in_h0: bool,
    pub commutant: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictOutput {
    pub verdict: String,
    pub witness: Option<MatrixText>,
    pub reason: Option<String>,
    pub derived_series: Vec<usize>,
    pub center_dim: usize,
    pub radical_dim: usize,
    pub radical_basis: Vec<MatrixText>,
    pub nilpotent_part_dim: Option<usize>,
    #[serde(skip)]
    pub witness_matrix: Option<Matrix>,
    #[serde(skip)]
    pub radical: Option<crate::matrix::MatrixSpace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductivityOutput {
    pub g0: VerdictOutput,
    pub h0: VerdictOutput,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularOutput {
    pub verdict: String,
    pub bound: usize,
    pub witness_degree: Option<usize>,
    pub expected_dim: Option<i128>,
    pub actual_dim: Option<i128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonOutput {
    pub outcome: String,
    pub bound: usize,
    pub headroom: usize,
    pub degree: Option<usize>,
    pub form: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobianOutput {
    pub point: Vec<String>,
    pub on_fiber: bool,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulOutput {
    /// `reduced` or `not-koszul`.
    pub outcome: String,
    pub coefficients: Option<Vec<String>>,
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldText {
    pub linear: MatrixText,
    pub translation: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineOutput {
    pub headroom: usize,
    pub cap: usize,
    pub dimension: usize,
    pub vanishing_dimension: usize,
    pub effective_dimension: usize,
    pub translation_rank: usize,
    pub effective_translation_rank: usize,
    pub closed: bool,
    pub verified: bool,
    /// Same dimensions when recomputed with two more units of headroom.
    pub stable: bool,
    pub linear_dimension: usize,
    pub fields: Vec<FieldText>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberOutput {
    pub elements: Vec<String>,
    pub constants: Vec<String>,
    pub headroom: usize,
    pub regular: RegularOutput,
    pub comparison: ComparisonOutput,
    pub members: Vec<MemberOutput>,
    pub jacobian: Option<JacobianOutput>,
    pub koszul: Option<KoszulOutput>,
    pub affine: Option<AffineOutput>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapOutput {
    pub name: String,
    pub target: MapTarget,
    /// `preserved`, `not-preserved` or `undetermined`.
    pub outcome: String,
    pub generator: Option<usize>,
    pub image: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckMapOutput {
    pub maps: Vec<MapOutput>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum TaskOutput {
    Invariants(InvariantsOutput),
    Nullcone(NullconeOutput),
    Stabilizer(StabilizerOutput),
    Reductivity(Box<ReductivityOutput>),
    Fiber(Box<FiberOutput>),
    CheckMap(CheckMapOutput),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaskReport {
    pub task: Task,
    /// `ok` or `error`.
    pub status: String,
    pub error: Option<String>,
    pub result: Option<TaskOutput>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectationLine {
    pub task: Task,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Everything a scenario run produced. Serializes deterministically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub description: String,
    pub variables: Vec<String>,
    pub degree_bound: usize,
    pub headroom: usize,
    pub tasks: Vec<TaskReport>,
    pub expectations: Vec<ExpectationLine>,
    pub passed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn failures(&self) -> impl Iterator<Item = &ExpectationLine> {
        self.expectations.iter().filter(|e| !e.pass)
    }

    pub fn output(&self, task: Task) -> Option<&TaskOutput> {
        self.tasks.iter().find(|t| t.task == task).and_then(|t| t.result.as_ref())
    }
}

struct Prepared<'a> {
    scenario: &'a Scenario,
    gens: GeneratorSet,
    lie_action: Option<Vec<Matrix>>,
    weights: Option<WeightSystem>,
    ideal: GradedIdeal,
    headroom: usize,
    members: Vec<Polynomial>,
    fiber: Option<PreparedFiber>,
    maps: Vec<AffineMap>,
    h0_contains: Vec<Matrix>,
    h0_radical_contains: Vec<Matrix>,
    g0: OnceLock<std::result::Result<StabilizerResult, String>>,
    h0: OnceLock<std::result::Result<StabilizerResult, String>>,
}

struct PreparedFiber {
    ideal: FiberIdeal,
    members: Vec<Polynomial>,
    jacobian_point: Option<Vec<Scalar>>,
    koszul: Option<Vec<Polynomial>>,
}

fn parse_polys(key: &str, texts: &[String], names: &VarNames) -> std::result::Result<Vec<Polynomial>, ConfigError> {
    texts.iter().map(|t| Polynomial::parse(t, names).map_err(|e| ConfigError::value(key, e))).collect()
}

/// Generators, the Lie action on coordinates (when known) and the weights.
type BuiltGenerators = (GeneratorSet, Option<Vec<Matrix>>, Option<WeightSystem>);

fn build_generators(scenario: &Scenario) -> std::result::Result<BuiltGenerators, ConfigError> {
    let key = "generators";
    let wrap = |e: Error| ConfigError::value(key, e);
    Ok(match &scenario.generators {
        GeneratorSpec::Weights { variables, torus_rank, cyclic_orders, weights } => {
            let names = VarNames::new(variables.clone()).map_err(wrap)?;
            let ws = WeightSystem::new(*torus_rank, cyclic_orders.clone(), weights.clone()).map_err(wrap)?;
            let gens = invariants::minimal_monomial_generators(&ws, names, scenario.degree_bound).map_err(wrap)?;
            (gens, None, Some(ws))
        }
        GeneratorSpec::Contraction { n, p, q } => {
            let gens = invariants::contraction_generators(*n, *p, *q).map_err(wrap)?;
            let action = (0..n * n).map(|u| invariants::contraction_rep(&Matrix::unit(*n, u / n, u % n), *p, *q)).collect();
            (gens, Some(action), None)
        }
        GeneratorSpec::AdjointSl { n } | GeneratorSpec::AdjointGl { n } => {
            let traceless = matches!(scenario.generators, GeneratorSpec::AdjointSl { .. });
            let gens = invariants::adjoint_trace_generators(*n, !traceless).map_err(wrap)?;
            let action = invariants::sl_basis(*n)
                .iter()
                .map(|y| invariants::adjoint_rep(y, traceless))
                .collect::<Result<Vec<_>>>()
                .map_err(wrap)?;
            (gens, Some(action), None)
        }
        GeneratorSpec::Sym2Vector { n } => {
            let gens = invariants::sym2_vector_generators(*n).map_err(wrap)?;
            let action = invariants::sl_basis(*n).iter().map(invariants::sym2_vector_rep).collect();
            (gens, Some(action), None)
        }
        GeneratorSpec::PfaffianSl4 => {
            let gens = invariants::pfaffian_scenario_generators();
            let action = invariants::sl_basis(4).iter().map(invariants::wedge2_vector_rep).collect();
            (gens, Some(action), None)
        }
        GeneratorSpec::Explicit { variables, polynomials } => {
            let names = VarNames::new(variables.clone()).map_err(wrap)?;
            let polys = parse_polys("generators.polynomials", polynomials, &names)?;
            (GeneratorSet::new(names, polys).map_err(wrap)?, None, None)
        }
    })
}

fn prepare(scenario: &Scenario) -> std::result::Result<Prepared<'_>, ConfigError> {
    let (gens, lie_action, weights) = build_generators(scenario)?;
    let names = gens.names().clone();
    let n = gens.nvars();
    let ideal = GradedIdeal::new(gens.clone()).map_err(|e| ConfigError::value("generators", e))?;
    let headroom = scenario.headroom.unwrap_or_else(|| default_headroom(&gens));
    let members: Vec<String> = scenario.members.iter().map(|m| m.polynomial.clone()).collect();
    let members = parse_polys("members", &members, &names)?;
    for m in &members {
        if !m.is_homogeneous() {
            return Err(ConfigError::value("members", Error::NotHomogeneous(m.to_string_with(&names))));
        }
    }

    let fiber = match &scenario.fiber {
        None => None,
        Some(spec) => {
            let ideal = match (&spec.constants, &spec.point) {
                (Some(c), None) => FiberIdeal::new(gens.clone(), scalars("fiber.constants", c)?)
                    .map_err(|e| ConfigError::value("fiber.constants", e))?,
                (None, Some(p)) => FiberIdeal::through_point(gens.clone(), &scalars("fiber.point", p)?)
                    .map_err(|e| ConfigError::value("fiber.point", e))?,
                _ => return Err(ConfigError::invalid("fiber", "give exactly one of `constants`, `point`")),
            };
            let members: Vec<String> = spec.members.iter().map(|m| m.polynomial.clone()).collect();
            let members = parse_polys("fiber.members", &members, &names)?;
            let jacobian_point = match &spec.jacobian_point {
                Some(p) => {
                    let p = scalars("fiber.jacobian_point", p)?;
                    if p.len() != n {
                        return Err(ConfigError::value(
                            "fiber.jacobian_point",
                            Error::DimensionMismatch { expected: n, found: p.len() },
                        ));
                    }
                    Some(p)
                }
                None => None,
            };
            let koszul = match &spec.koszul {
                Some(k) => {
                    let a = parse_polys("fiber.koszul.coefficients", &k.coefficients, &names)?;
                    if a.len() != gens.len() {
                        return Err(ConfigError::value(
                            "fiber.koszul.coefficients",
                            Error::DimensionMismatch { expected: gens.len(), found: a.len() },
                        ));
                    }
                    Some(a)
                }
                None => None,
            };
            Some(PreparedFiber { ideal, members, jacobian_point, koszul })
        }
    };

    let mut maps = Vec::new();
    for spec in &scenario.maps {
        if spec.target == MapTarget::Fiber && fiber.is_none() {
            return Err(ConfigError::invalid(format!("maps.{}", spec.name), "target `fiber` needs a [fiber] table"));
        }
        maps.push(spec.build(&scenario.generators, n)?);
    }

    let square = |key: &str, ms: &Option<Vec<Vec<Vec<super::config::ScalarText>>>>| {
        ms.iter()
            .flatten()
            .map(|rows| {
                let m = matrix(key, rows)?;
                if m.dim() == n {
                    Ok(m)
                } else {
                    Err(ConfigError::value(key, Error::DimensionMismatch { expected: n, found: m.dim() }))
                }
            })
            .collect::<std::result::Result<Vec<_>, _>>()
    };
    let h0_contains = square("expect.h0_contains", &scenario.expect.h0_contains)?;
    let h0_radical_contains = square("expect.h0_radical_contains", &scenario.expect.h0_radical_contains)?;

    if let Some(blocks) = &scenario.blocks {
        let total: usize = blocks.iter().map(|[d, m]| d * m).sum();
        if total != n {
            return Err(ConfigError::value("blocks", Error::DimensionMismatch { expected: n, found: total }));
        }
    }

    Ok(Prepared {
        scenario,
        gens,
        lie_action,
        weights,
        ideal,
        headroom,
        members,
        fiber,
        maps,
        h0_contains,
        h0_radical_contains,
        g0: OnceLock::new(),
        h0: OnceLock::new(),
    })
}

impl Prepared<'_> {
    fn show(&self, p: &Polynomial) -> String {
        p.to_string_with(self.gens.names())
    }

    fn g0(&self) -> std::result::Result<&StabilizerResult, String> {
        self.g0
            .get_or_init(|| crate::stabilizer::annihilator_algebra(&self.gens).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn h0(&self) -> std::result::Result<&StabilizerResult, String> {
        self.h0.get_or_init(|| ideal_stabilizer_algebra(&self.ideal).map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
    }

    fn run(&self, task: Task) -> std::result::Result<TaskOutput, String> {
        match task {
            Task::Invariants => self.invariants().map(TaskOutput::Invariants).map_err(|e| e.to_string()),
            Task::Nullcone => self.nullcone().map(TaskOutput::Nullcone).map_err(|e| e.to_string()),
            Task::Stabilizer => self.stabilizer().map(TaskOutput::Stabilizer),
            Task::Reductivity => self.reductivity().map(|r| TaskOutput::Reductivity(Box::new(r))),
            Task::Fiber => self.fiber().map(|f| TaskOutput::Fiber(Box::new(f))),
            Task::CheckMap => self.check_maps().map(TaskOutput::CheckMap).map_err(|e| e.to_string()),
        }
    }

    fn invariants(&self) -> Result<InvariantsOutput> {
        let source = match &self.scenario.generators {
            GeneratorSpec::Weights { .. } => "weights",
            GeneratorSpec::Contraction { .. } => "contraction",
            GeneratorSpec::AdjointSl { .. } => "adjoint_sl",
            GeneratorSpec::AdjointGl { .. } => "adjoint_gl",
            GeneratorSpec::Sym2Vector { .. } => "sym2_vector",
            GeneratorSpec::PfaffianSl4 => "pfaffian_sl4",
            GeneratorSpec::Explicit { .. } => "explicit",
        };
        let generation_complete = match &self.weights {
            Some(ws) => Some(invariants::monomial_generation_complete(ws, &self.gens, self.scenario.degree_bound)?),
            None => None,
        };
        let invariant = match &self.lie_action {
            Some(action) => {
                let mut ok = true;
                for a in action {
                    for p in self.gens.generators() {
                        ok &= derivation_apply(a, p)?.is_zero();
                    }
                }
                Some(ok)
            }
            None => None,
        };
        Ok(InvariantsOutput {
            source: source.into(),
            variables: self.gens.names().names().to_vec(),
            generators: self.gens.to_strings(),
            degrees: self.gens.degrees(),
            generation_complete,
            invariant,
        })
    }

    fn member_output(&self, f: &Polynomial, membership: Membership, elements: &[Polynomial]) -> MemberOutput {
        match membership {
            Membership::Member(cert) => MemberOutput {
                polynomial: self.show(f),
                outcome: "member".into(),
                verified: Some(cert.verifies(f, elements)),
                certificate: Some(cert.coefficients.iter().map(|a| self.show(a)).collect()),
                residual: None,
            },
            Membership::NotMember { residual } => MemberOutput {
                polynomial: self.show(f),
                outcome: "not-member".into(),
                certificate: None,
                residual: Some(self.show(&residual)),
                verified: None,
            },
        }
    }

    fn nullcone(&self) -> Result<NullconeOutput> {
        let n = self.gens.nvars();
        let pieces = (0..=self.scenario.degree_bound)
            .into_par_iter()
            .map(|d| {
                let ideal_dim = self.ideal.dim(d);
                PieceDim { degree: d, ideal_dim, quotient_dim: crate::poly::count_monomials(n, d) - ideal_dim }
            })
            .collect();
        let members = self
            .members
            .iter()
            .map(|f| Ok(self.member_output(f, self.ideal.membership(f)?, self.gens.generators())))
            .collect::<Result<Vec<_>>>()?;
        Ok(NullconeOutput { pieces, members })
    }

    fn stabilizer(&self) -> std::result::Result<StabilizerOutput, String> {
        let g0 = self.g0()?;
        let h0 = self.h0()?;
        let err = |e: Error| e.to_string();
        let mut g0_ok = true;
        for a in g0.basis() {
            g0_ok &= annihilates(&self.gens, &a).map_err(err)?;
        }
        let mut h0_ok = true;
        for a in h0.basis() {
            h0_ok &= preserves_ideal(&self.ideal, &a).map_err(err)?;
        }
        let commutant = match &self.scenario.blocks {
            Some(blocks) => {
                let blocks: Vec<(usize, usize)> = blocks.iter().map(|[d, m]| (*d, *m)).collect();
                Some(commutant_check(h0, g0, &blocks).map_err(err)?)
            }
            None => None,
        };
        let algebra = |r: &StabilizerResult, verified: bool| AlgebraOutput {
            dimension: r.dimension(),
            closed: r.closed,
            verified,
            equations: r.summary.equations,
            unknowns: r.summary.unknowns,
            rank: r.summary.rank,
            basis: r.basis().iter().map(matrix_text).collect(),
        };
        Ok(StabilizerOutput {
            g0: algebra(g0, g0_ok),
            h0: algebra(h0, h0_ok),
            g0_in_h0: g0.space.is_subspace_of(&h0.space),
            identity_in_h0: h0.contains(&Matrix::identity(self.gens.nvars())),
            commutant,
        })
    }

    fn verdict(r: &StabilizerResult) -> Result<VerdictOutput> {
        let l = MatrixLieAlgebra::from_space(r.space.clone())?;
        let rad = l.radical()?;
        let nil = if rad.dim() > 0 { nilpotent_part(&rad).map(|s| s.dim()) } else { Some(0) };
        let (verdict, witness, reason) = match reductivity_verdict(&l)? {
            ReductivityVerdict::Reductive => ("reductive", None, None),
            ReductivityVerdict::NonReductive { witness } => ("non-reductive", Some(witness), None),
            ReductivityVerdict::Indeterminate(why) => ("indeterminate", None, Some(why)),
        };
        Ok(VerdictOutput {
            verdict: verdict.into(),
            witness: witness.as_ref().map(matrix_text),
            reason,
            derived_series: l.derived_series(),
            center_dim: l.center().dim(),
            radical_dim: rad.dim(),
            radical_basis: rad.basis().iter().map(matrix_text).collect(),
            nilpotent_part_dim: nil,
            witness_matrix: witness,
            radical: Some(rad),
        })
    }

    fn reductivity(&self) -> std::result::Result<ReductivityOutput, String> {
        let (g0, h0) = rayon::join(|| self.g0().cloned(), || self.h0().cloned());
        let (g0, h0) = (g0?, h0?);
        let (g, h) = rayon::join(|| Self::verdict(&g0), || Self::verdict(&h0));
        Ok(ReductivityOutput { g0: g.map_err(|e| e.to_string())?, h0: h.map_err(|e| e.to_string())? })
    }

    fn fiber(&self) -> std::result::Result<FiberOutput, String> {
        let spec = self.scenario.fiber.as_ref().ok_or("the scenario has no [fiber] table")?;
        let pf = self.fiber.as_ref().expect("prepared with the scenario");
        let fiber = &pf.ideal;
        let err = |e: Error| e.to_string();
        let h = spec.headroom.unwrap_or(self.headroom);

        let regular_bound = spec.regular_bound.unwrap_or(self.scenario.degree_bound);
        let regular = match regular_sequence_check(&self.gens, regular_bound).map_err(err)? {
            RegSeqVerdict::RegularUpTo(b) => {
                RegularOutput { verdict: "regular".into(), bound: b, witness_degree: None, expected_dim: None, actual_dim: None }
            }
            RegSeqVerdict::NotRegular { witness_degree, expected_dim, actual_dim } => RegularOutput {
                verdict: "not-regular".into(),
                bound: regular_bound,
                witness_degree: Some(witness_degree),
                expected_dim: Some(expected_dim),
                actual_dim: Some(actual_dim),
            },
        };

        let comparison_bound = spec.comparison_bound.unwrap_or(self.scenario.degree_bound);
        let comparison = match graded_comparison(fiber, comparison_bound, h).map_err(err)? {
            Comparison::EqualUpTo(b) => {
                ComparisonOutput { outcome: "equal".into(), bound: b, headroom: h, degree: None, form: None }
            }
            Comparison::Witness { degree, form } => ComparisonOutput {
                outcome: "witness".into(),
                bound: comparison_bound,
                headroom: h,
                degree: Some(degree),
                form: Some(self.show(&form)),
            },
        };

        let mut members = Vec::new();
        for f in &pf.members {
            members.push(match truncated_membership(f, fiber, h).map_err(err)? {
                TruncatedMembership::Member(cert) => MemberOutput {
                    polynomial: self.show(f),
                    outcome: "member".into(),
                    verified: Some(cert.verifies(f, fiber.elements())),
                    certificate: Some(cert.coefficients.iter().map(|a| self.show(a)).collect()),
                    residual: None,
                },
                TruncatedMembership::UndeterminedAtHeadroom { .. } => MemberOutput {
                    polynomial: self.show(f),
                    outcome: "undetermined".into(),
                    certificate: None,
                    residual: None,
                    verified: None,
                },
            });
        }

        let jacobian = match &pf.jacobian_point {
            Some(p) => {
                let mut on_fiber = true;
                for (g, c) in self.gens.generators().iter().zip(fiber.constants()) {
                    on_fiber &= &g.evaluate(p).map_err(err)? == c;
                }
                Some(JacobianOutput { point: scalar_texts(p), on_fiber, rank: jacobian_rank_at(&self.gens, p).map_err(err)? })
            }
            None => None,
        };

        let koszul = match (&pf.koszul, &spec.koszul) {
            (Some(a), Some(k)) => Some(match koszul_reduce(a, &self.gens, fiber.constants(), k.target_degree) {
                Ok(out) => KoszulOutput {
                    outcome: "reduced".into(),
                    coefficients: Some(out.iter().map(|x| self.show(x)).collect()),
                    degree: None,
                },
                Err(Error::SyzygyNotKoszul { degree }) => {
                    KoszulOutput { outcome: "not-koszul".into(), coefficients: None, degree: Some(degree) }
                }
                Err(e) => return Err(e.to_string()),
            }),
            _ => None,
        };

        let affine = if spec.affine {
            let (aff, wider) =
                rayon::join(|| affine_stabilizer_algebra(fiber, h), || affine_stabilizer_algebra(fiber, h + 2));
            let (aff, wider) = (aff.map_err(err)?, wider.map_err(err)?);
            let mut verified = true;
            for f in &aff.fields {
                verified &= field_preserves_fiber(fiber, f, h).map_err(err)?;
            }
            let linear = linear_fiber_stabilizer(fiber, h).map_err(err)?;
            Some(AffineOutput {
                headroom: h,
                cap: aff.cap,
                dimension: aff.dimension(),
                vanishing_dimension: aff.vanishing_dimension(),
                effective_dimension: aff.effective_dimension(),
                translation_rank: aff.translation_rank(),
                effective_translation_rank: aff.effective_translation_rank(),
                closed: aff.closed,
                verified,
                stable: aff.dimension() == wider.dimension() && aff.effective_dimension() == wider.effective_dimension(),
                linear_dimension: linear.dimension(),
                fields: aff
                    .fields
                    .iter()
                    .map(|f| FieldText { linear: matrix_text(&f.linear), translation: scalar_texts(&f.translation) })
                    .collect(),
            })
        } else {
            None
        };

        Ok(FiberOutput {
            elements: fiber.elements().iter().map(|e| self.show(e)).collect(),
            constants: scalar_texts(fiber.constants()),
            headroom: h,
            regular,
            comparison,
            members,
            jacobian,
            koszul,
            affine,
        })
    }

    fn check_maps(&self) -> Result<CheckMapOutput> {
        let maps = self
            .scenario
            .maps
            .par_iter()
            .zip(&self.maps)
            .map(|(spec, map)| {
                let target = match spec.target {
                    MapTarget::Nullcone => IdealRef::Graded(&self.ideal),
                    MapTarget::Fiber => IdealRef::Fiber(&self.fiber.as_ref().expect("validated").ideal),
                };
                let (outcome, generator, image) = match map_preserves_ideal(map, target, self.headroom)? {
                    Preservation::Preserved => ("preserved", None, None),
                    Preservation::NotPreserved { generator, image } => ("not-preserved", Some(generator), Some(image)),
                    Preservation::NotPreservedAtHeadroom { generator, image, .. } => {
                        ("undetermined", Some(generator), Some(image))
                    }
                };
                Ok(MapOutput {
                    name: spec.name.clone(),
                    target: spec.target,
                    outcome: outcome.into(),
                    generator,
                    image: image.map(|p| self.show(&p)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CheckMapOutput { maps })
    }
}

struct Checker<'a> {
    outputs: &'a BTreeMap<Task, std::result::Result<TaskOutput, String>>,
    lines: Vec<ExpectationLine>,
}

fn render<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

impl Checker<'_> {
    fn check<T, F>(&mut self, task: Task, name: impl Into<String>, expected: Option<T>, actual: F)
    where
        T: Serialize + PartialEq,
        F: FnOnce(&TaskOutput) -> Option<T>,
    {
        let Some(expected) = expected else { return };
        let Some(out) = self.outputs.get(&task) else { return };
        let (actual, pass) = match out {
            Err(e) => (format!("task failed: {e}"), false),
            Ok(out) => match actual(out) {
                Some(a) => (render(&a), a == expected),
                None => ("not available".to_string(), false),
            },
        };
        self.lines.push(ExpectationLine { task, name: name.into(), expected: render(&expected), actual, pass });
    }
}

fn stab(o: &TaskOutput) -> Option<&StabilizerOutput> {
    match o {
        TaskOutput::Stabilizer(s) => Some(s),
        _ => None,
    }
}

fn red(o: &TaskOutput) -> Option<&ReductivityOutput> {
    match o {
        TaskOutput::Reductivity(r) => Some(r),
        _ => None,
    }
}

fn fib(o: &TaskOutput) -> Option<&FiberOutput> {
    match o {
        TaskOutput::Fiber(f) => Some(f),
        _ => None,
    }
}

fn verdict_name(v: &VerdictOutput) -> Option<VerdictName> {
    match v.verdict.as_str() {
        "reductive" => Some(VerdictName::Reductive),
        "non-reductive" => Some(VerdictName::NonReductive),
        "indeterminate" => Some(VerdictName::Indeterminate),
        _ => None,
    }
}

fn check_expectations(
    scenario: &Scenario,
    prepared: &Prepared<'_>,
    outputs: &BTreeMap<Task, std::result::Result<TaskOutput, String>>,
) -> Vec<ExpectationLine> {
    let e: &Expect = &scenario.expect;
    let mut c = Checker { outputs, lines: Vec::new() };
    use Task::*;

    c.check(Invariants, "generators", e.generators.clone(), |o| match o {
        TaskOutput::Invariants(i) => Some(i.generators.clone()),
        _ => None,
    });
    c.check(Invariants, "generation_complete", e.generation_complete, |o| match o {
        TaskOutput::Invariants(i) => i.generation_complete,
        _ => None,
    });
    c.check(Invariants, "invariant", e.invariant, |o| match o {
        TaskOutput::Invariants(i) => i.invariant,
        _ => None,
    });
    for [d, dim] in e.piece_dims.iter().flatten() {
        c.check(Nullcone, format!("piece_dim[{d}]"), Some(*dim), |o| match o {
            TaskOutput::Nullcone(n) => n.pieces.iter().find(|p| p.degree == *d).map(|p| p.ideal_dim),
            _ => None,
        });
    }
    for (k, q) in scenario.members.iter().enumerate() {
        c.check(Nullcone, format!("member {}", q.polynomial), q.expect, |o| match o {
            TaskOutput::Nullcone(n) => n.members.get(k).map(|m| m.outcome == "member" && m.verified == Some(true)),
            _ => None,
        });
    }

    c.check(Stabilizer, "g0_dim", e.g0_dim, |o| stab(o).map(|s| s.g0.dimension));
    c.check(Stabilizer, "h0_dim", e.h0_dim, |o| stab(o).map(|s| s.h0.dimension));
    if e.g0_dim.is_some() || e.h0_dim.is_some() {
        c.check(Stabilizer, "stabilizers closed and verified", Some(true), |o| {
            stab(o).map(|s| s.g0.closed && s.h0.closed && s.g0.verified && s.h0.verified && s.g0_in_h0 && s.identity_in_h0)
        });
    }
    for (k, m) in prepared.h0_contains.iter().enumerate() {
        let Ok(h0) = prepared.h0() else { continue };
        let inside = h0.contains(m);
        c.check(Stabilizer, format!("h0_contains[{k}]"), Some(true), |o| stab(o).map(|_| inside));
    }
    c.check(Stabilizer, "commutant", e.commutant, |o| stab(o).and_then(|s| s.commutant));

    c.check(Reductivity, "g0_verdict", e.g0_verdict, |o| red(o).and_then(|r| verdict_name(&r.g0)));
    c.check(Reductivity, "h0_verdict", e.h0_verdict, |o| red(o).and_then(|r| verdict_name(&r.h0)));
    c.check(Reductivity, "g0_radical_dim", e.g0_radical_dim, |o| red(o).map(|r| r.g0.radical_dim));
    c.check(Reductivity, "h0_radical_dim", e.h0_radical_dim, |o| red(o).map(|r| r.h0.radical_dim));
    c.check(Reductivity, "g0_nilpotent_dim", e.g0_nilpotent_dim, |o| red(o).and_then(|r| r.g0.nilpotent_part_dim));
    c.check(Reductivity, "h0_nilpotent_dim", e.h0_nilpotent_dim, |o| red(o).and_then(|r| r.h0.nilpotent_part_dim));
    for (k, m) in prepared.h0_radical_contains.iter().enumerate() {
        c.check(Reductivity, format!("h0_radical_contains[{k}]"), Some(true), |o| {
            red(o).and_then(|r| r.h0.radical.as_ref()).map(|rad| rad.contains(m))
        });
    }
    let witness_ok = |v: &VerdictOutput, support: &super::config::Support| {
        let w = v.witness_matrix.as_ref()?;
        let rad = v.radical.as_ref()?;
        Some(!w.is_zero() && w.is_nilpotent() && rad.contains(w) && support.admits(w))
    };
    if let Some(s) = &e.g0_witness_support {
        c.check(Reductivity, "g0_witness_support", Some(true), |o| red(o).and_then(|r| witness_ok(&r.g0, s)));
    }
    if let Some(s) = &e.h0_witness_support {
        c.check(Reductivity, "h0_witness_support", Some(true), |o| red(o).and_then(|r| witness_ok(&r.h0, s)));
    }

    c.check(Fiber, "regular", e.regular, |o| {
        fib(o).map(|f| if f.regular.verdict == "regular" { RegularName::Regular } else { RegularName::NotRegular })
    });
    c.check(Fiber, "regular_witness", e.regular_witness, |o| {
        let r = &fib(o)?.regular;
        Some([r.witness_degree? as i64, r.expected_dim? as i64, r.actual_dim? as i64])
    });
    c.check(Fiber, "comparison", e.comparison, |o| {
        fib(o).map(|f| if f.comparison.outcome == "equal" { ComparisonName::Equal } else { ComparisonName::Witness })
    });
    c.check(Fiber, "comparison_witness_degree", e.comparison_witness_degree, |o| fib(o)?.comparison.degree);
    c.check(Fiber, "comparison_witness_form", e.comparison_witness_form.clone(), |o| fib(o)?.comparison.form.clone());
    c.check(Fiber, "jacobian_rank", e.jacobian_rank, |o| fib(o)?.jacobian.as_ref().map(|j| j.rank));
    if e.jacobian_rank.is_some() {
        c.check(Fiber, "jacobian point on fiber", Some(true), |o| fib(o)?.jacobian.as_ref().map(|j| j.on_fiber));
    }
    c.check(Fiber, "affine_dim", e.affine_dim, |o| fib(o)?.affine.as_ref().map(|a| a.dimension));
    c.check(Fiber, "affine_vanishing_dim", e.affine_vanishing_dim, |o| {
        fib(o)?.affine.as_ref().map(|a| a.vanishing_dimension)
    });
    c.check(Fiber, "affine_effective_dim", e.affine_effective_dim, |o| {
        fib(o)?.affine.as_ref().map(|a| a.effective_dimension)
    });
    c.check(Fiber, "affine_translation_rank", e.affine_translation_rank, |o| {
        fib(o)?.affine.as_ref().map(|a| a.translation_rank)
    });
    c.check(Fiber, "affine_effective_translation_rank", e.affine_effective_translation_rank, |o| {
        fib(o)?.affine.as_ref().map(|a| a.effective_translation_rank)
    });
    c.check(Fiber, "affine_stable", e.affine_stable, |o| fib(o)?.affine.as_ref().map(|a| a.stable));
    c.check(Fiber, "linear_fiber_dim", e.linear_fiber_dim, |o| fib(o)?.affine.as_ref().map(|a| a.linear_dimension));
    if e.affine_dim.is_some() || e.affine_effective_dim.is_some() {
        c.check(Fiber, "affine fields verified", Some(true), |o| fib(o)?.affine.as_ref().map(|a| a.verified));
    }
    if let Some(spec) = &scenario.fiber {
        for (k, q) in spec.members.iter().enumerate() {
            c.check(Fiber, format!("fiber member {}", q.polynomial), q.expect, |o| {
                fib(o)?.members.get(k).map(|m| m.outcome == "member" && m.verified == Some(true))
            });
        }
        if let Some(k) = &spec.koszul {
            c.check(Fiber, "koszul", k.expect, |o| {
                fib(o)?.koszul.as_ref().map(|r| {
                    if r.outcome == "reduced" {
                        KoszulExpect::Reduced
                    } else {
                        KoszulExpect::NotKoszul
                    }
                })
            });
        }
    }

    for (k, spec) in scenario.maps.iter().enumerate() {
        c.check(CheckMap, format!("map {}", spec.name), spec.expect, |o| match o {
            TaskOutput::CheckMap(m) => m.maps.get(k).map(|m| match m.outcome.as_str() {
                "preserved" => MapExpect::Preserved,
                "not-preserved" => MapExpect::NotPreserved,
                _ => MapExpect::Undetermined,
            }),
            _ => None,
        });
    }
    c.lines
}

/// Runs the scenario's tasks (in parallel, reported in declared order) and
/// checks every expectation.
pub fn run_scenario(scenario: &Scenario) -> std::result::Result<Report, ConfigError> {
    let prepared = prepare(scenario)?;
    let tasks = scenario.effective_tasks();
    let results: Vec<std::result::Result<TaskOutput, String>> = tasks.par_iter().map(|&t| prepared.run(t)).collect();
    let outputs: BTreeMap<Task, _> = tasks.iter().copied().zip(results.iter().cloned()).collect();
    let expectations = check_expectations(scenario, &prepared, &outputs);
    let tasks: Vec<TaskReport> = tasks
        .into_iter()
        .zip(results)
        .map(|(task, r)| match r {
            Ok(out) => TaskReport { task, status: "ok".into(), error: None, result: Some(out) },
            Err(e) => TaskReport { task, status: "error".into(), error: Some(e), result: None },
        })
        .collect();
    let passed = tasks.iter().all(|t| t.error.is_none()) && expectations.iter().all(|e| e.pass);
    Ok(Report {
        scenario: scenario.name.clone(),
        description: scenario.description.clone(),
        variables: prepared.gens.names().names().to_vec(),
        degree_bound: scenario.degree_bound,
        headroom: prepared.headroom,
        tasks,
        expectations,
        passed,
    })
}
