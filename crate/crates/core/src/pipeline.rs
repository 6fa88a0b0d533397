//! Acting on regime certificates: substitute the parallel closure, seed the
//! target engine with it, filter negative queries, or run the target engine
//! directly.

use std::time::Instant;

use serde::Serialize;

use crate::analysis::{certify_regime, classify_regime, NotATarget, Regime, RegimeCertificate};
use crate::closure::{ClosureSet, Status, Tag};
use crate::engine::{self, EngineError};
use crate::model::{Literal, Theory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Substitute,
    Preprocess,
    OverApproxFilter,
    Direct,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Route::Substitute => "substitute",
            Route::Preprocess => "preprocess",
            Route::OverApproxFilter => "over_approx_filter",
            Route::Direct => "direct",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelinePlan {
    pub target: Tag,
    pub route: Route,
    /// Absent exactly for [`Route::Direct`].
    pub certificate: Option<RegimeCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    NotATarget(#[from] NotATarget),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("{0} has no negative-query filter (expected delta_ap or delta_ap_star)")]
    NoFilter(Tag),
    #[error("no over-approximation certificate for {0}: the theory must have no facts and an empty superiority relation")]
    CertificateAbsent(Tag),
    #[error("an over-approximation filter answers queries and does not produce a closure")]
    FilterIsNotAClosure,
}

/// Routes `target` by the strongest certificate: exact regimes substitute,
/// under-approximations preprocess, anything else runs directly.
pub fn plan(theory: &Theory, target: Tag) -> Result<PipelinePlan, PipelineError> {
    let cert = classify_regime(theory, target)?;
    let route = match cert.regime {
        Regime::ExactSubstitution | Regime::ExactEquality => Route::Substitute,
        Regime::UnderApprox => Route::Preprocess,
        Regime::OverApprox | Regime::None => Route::Direct,
    };
    let certificate = (route != Route::Direct).then_some(cert);
    Ok(PipelinePlan {
        target,
        route,
        certificate,
    })
}

/// The plan for answering "is `+target q` ruled out?" queries.
pub fn plan_negative_query(theory: &Theory, target: Tag) -> Result<PipelinePlan, PipelineError> {
    if !matches!(target, Tag::DeltaAp | Tag::DeltaApStar) {
        return Err(PipelineError::NoFilter(target));
    }
    let cert = certify_regime(theory, target, Regime::OverApprox)?
        .ok_or(PipelineError::CertificateAbsent(target))?;
    Ok(PipelinePlan {
        target,
        route: Route::OverApproxFilter,
        certificate: Some(cert),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Phase {
    pub name: &'static str,
    pub micros: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub target: Tag,
    pub route: Route,
    pub basis: Option<&'static str>,
    /// Positive target conclusions taken from the parallel closure.
    pub seeded: usize,
    /// Positive target conclusions derived by the target engine itself.
    pub residual: usize,
    pub phases: Vec<Phase>,
}

#[derive(Debug, Clone)]
pub struct Execution {
    /// Contains at least Δ and the target tag.
    pub closures: ClosureSet,
    pub provenance: Provenance,
}

struct Clock {
    phases: Vec<Phase>,
    last: Instant,
}

impl Clock {
    fn start() -> Self {
        Clock {
            phases: Vec::new(),
            last: Instant::now(),
        }
    }

    fn lap(&mut self, name: &'static str) {
        let now = Instant::now();
        self.phases.push(Phase {
            name,
            micros: (now - self.last).as_micros(),
        });
        self.last = now;
    }
}

pub fn execute(theory: &Theory, plan: &PipelinePlan) -> Result<Execution, PipelineError> {
    let target = plan.target;
    let via = target.parallel_counterpart();
    let mut clock = Clock::start();
    let (closures, seeded) = match plan.route {
        Route::OverApproxFilter => return Err(PipelineError::FilterIsNotAClosure),
        Route::Direct => {
            let set = engine::closure(theory, target)?;
            clock.lap("direct");
            (set, 0)
        }
        Route::Substitute => {
            let parallel = engine::closure(theory, via)?;
            clock.lap("parallel");
            let mut set = ClosureSet::new();
            set.insert(parallel.closure(Tag::Delta).clone());
            let relabeled = parallel.closure(via).relabel(target);
            let seeded = relabeled.positive_count();
            set.insert(relabeled);
            (set, seeded)
        }
        Route::Preprocess => {
            let parallel = engine::closure(theory, via)?;
            clock.lap("parallel");
            let seed: Vec<Literal> = parallel.closure(via).positives().collect();
            let set = engine::kickstart_closure(theory, target, &seed)?;
            clock.lap("completion");
            (set, seed.len())
        }
    };
    let positives = closures.closure(target).positive_count();
    Ok(Execution {
        closures,
        provenance: Provenance {
            target,
            route: plan.route,
            basis: plan
                .certificate
                .as_ref()
                .and_then(|c| c.basis.as_ref())
                .map(|b| b.name),
            seeded,
            residual: positives - seeded,
            phases: clock.phases,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterAnswer {
    DefinitelyNotPlus,
    Unknown,
}

/// Answers from the parallel closure alone: a literal outside `+∂||`
/// (`+∂||*` for δ*) cannot be `+target`.
pub fn negative_query_filter(
    theory: &Theory,
    target: Tag,
    literal: Literal,
) -> Result<FilterAnswer, PipelineError> {
    let plan = plan_negative_query(theory, target)?;
    let via = plan
        .certificate
        .as_ref()
        .expect("filter plans carry a certificate")
        .via;
    let parallel = engine::closure(theory, via)?;
    Ok(if parallel.closure(via).is_plus(literal) {
        FilterAnswer::Unknown
    } else {
        FilterAnswer::DefinitelyNotPlus
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiteralDiff {
    pub literal: String,
    pub left: Status,
    pub right: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonDiff {
    pub left: Tag,
    pub right: Tag,
    pub agreements: usize,
    /// Literals whose status differs, in literal order.
    pub differences: Vec<LiteralDiff>,
    pub left_positives_in_right: bool,
    pub right_positives_in_left: bool,
    /// `+left` but not `+right`.
    pub only_left_plus: Vec<String>,
    /// `+right` but not `+left`.
    pub only_right_plus: Vec<String>,
}

impl ComparisonDiff {
    pub fn is_empty(&self) -> bool {
        self.differences.is_empty()
    }
}

pub fn compare(theory: &Theory, left: Tag, right: Tag) -> Result<ComparisonDiff, EngineError> {
    let reasoner = engine::Reasoner::new(theory);
    let a = reasoner.closure(left)?;
    let b = reasoner.closure(right)?;
    let mut diff = ComparisonDiff {
        left,
        right,
        agreements: 0,
        differences: Vec::new(),
        left_positives_in_right: a.positives_subset_of(b),
        right_positives_in_left: b.positives_subset_of(a),
        only_left_plus: Vec::new(),
        only_right_plus: Vec::new(),
    };
    for lit in theory.literals() {
        let (l, r) = (a.status(lit), b.status(lit));
        if l == r {
            diff.agreements += 1;
            continue;
        }
        let name = theory.literal_name(lit);
        if l == Status::Plus {
            diff.only_left_plus.push(name.clone());
        }
        if r == Status::Plus {
            diff.only_right_plus.push(name.clone());
        }
        diff.differences.push(LiteralDiff {
            literal: name,
            left: l,
            right: r,
        });
    }
    Ok(diff)
}
