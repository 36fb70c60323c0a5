//! Group-level verdicts.
//!
//! A group is reported as a generalized torsion group only when its family
//! has an analytic witness schema, meaning a rule producing a witness for
//! every nontrivial element. Sampling alone never yields that status.
//! Negative verdicts carry evidence that is either computed here (tier 1)
//! or a citation that this crate does not check (tier 2).

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::morphism::Morphism;
use crate::scl::{chen_lower_bound, RationalBound};
use crate::search::{abelianization_obstruction, gt_group_survey, SearchBudget, SearchError};
use crate::witness::{
    construct_prod_torsion_witness, dinf_witness, lift_witness_gt_kernel, push_witness,
    torsion_witness, Pushed, Witness,
};
use crate::zoo::{AbelianGroup, BoundedOrder, Element, Group, GroupSpec, Order, Side};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("factor list for {0} is empty")]
    EmptyFactors(&'static str),
    #[error("cyclic factor of order 1 in {0}")]
    TrivialFactor(&'static str),
    #[error("expected a finitely generated abelian group, got {0}")]
    NotAbelian(String),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GtStatus {
    GeneralizedTorsionGroup,
    NotGt,
    ConsistentUpToBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tier {
    /// Computed and checked by this crate.
    T1,
    /// Cited result, not recomputed.
    T2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvidenceDetail {
    Witness {
        witness: Witness,
    },
    /// Lower bound for an alternating word whose letters have the orders of
    /// the generators of `carrier`.
    ChenBound {
        carrier: GroupSpec,
        element: String,
        bound: RationalBound,
    },
    Abelianization {
        abelianization: String,
        element: String,
        image: Vec<String>,
    },
    /// A factor is not a generalized torsion group, hence neither is the
    /// product, which surjects onto it.
    Factor {
        side: Side,
        status: GtStatus,
        evidence: Vec<Evidence>,
    },
    Survey {
        sampled: usize,
        found: usize,
        exhausted: usize,
        max_witness_length: Option<usize>,
    },
    Citation {
        statement: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub tier: Tier,
    pub desk_verified: bool,
    #[serde(flatten)]
    pub detail: EvidenceDetail,
}

impl Evidence {
    fn computed(detail: EvidenceDetail) -> Self {
        Evidence {
            tier: Tier::T1,
            desk_verified: true,
            detail,
        }
    }

    fn citation(statement: &str) -> Self {
        Evidence {
            tier: Tier::T2,
            desk_verified: false,
            detail: EvidenceDetail::Citation {
                statement: statement.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GtVerdict {
    pub group: String,
    pub status: GtStatus,
    pub evidence: Vec<Evidence>,
}

const FREE_PRODUCT_CITATION: &str = "a free product A * B of nontrivial groups is a generalized \
     torsion group only if both factors are torsion groups of exponent two, and then only for \
     A = B = Z_2";
const EXPONENT_TWO_CITATION: &str = "a free product of elementary abelian 2-groups other than \
     Z_2 * Z_2 has an element of positive stable commutator length, while every element of a \
     generalized torsion group has stable commutator length zero";

fn check_factors(orders: &[u64], side: &'static str) -> Result<(), ClassifyError> {
    if orders.is_empty() {
        return Err(ClassifyError::EmptyFactors(side));
    }
    if orders.contains(&1) {
        return Err(ClassifyError::TrivialFactor(side));
    }
    Ok(())
}

fn describe_factor(orders: &[u64]) -> String {
    orders
        .iter()
        .map(|&n| if n == 0 { "Z".into() } else { format!("Z_{n}") })
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Largest element order of `Z_{n_1} x ... x Z_{n_k}` realized by a single
/// cyclic factor; `0` means infinite.
fn largest_letter(orders: &[u64]) -> u64 {
    if orders.contains(&0) {
        0
    } else {
        *orders.iter().max().expect("nonempty")
    }
}

fn at_least_three(order: u64) -> bool {
    order == 0 || order >= 3
}

/// Verdict for `A ∗ B`, where `A` and `B` are direct products of cyclic
/// groups with the given orders (`0` for `Z`).
pub fn classify_free_product(a: &[u64], b: &[u64]) -> Result<GtVerdict, ClassifyError> {
    check_factors(a, "A")?;
    check_factors(b, "B")?;
    let group = format!("({}) * ({})", describe_factor(a), describe_factor(b));

    if a == [2] && b == [2] {
        let d = Group::new(GroupSpec::free_product(&[2, 2])).expect("valid spec");
        let evidence = d
            .ball(2)
            .into_iter()
            .filter(|x| !d.is_identity(x))
            .map(|x| {
                let witness = dinf_witness(&d, &x).expect("every nontrivial element has one");
                Evidence::computed(EvidenceDetail::Witness { witness })
            })
            .collect();
        return Ok(GtVerdict {
            group,
            status: GtStatus::GeneralizedTorsionGroup,
            evidence,
        });
    }

    // The abelianization A ⊕ B of A ∗ B sees a Z summand directly.
    let sum: Vec<u64> = a.iter().chain(b).copied().collect();
    if let Some(i) = sum.iter().position(|&n| n == 0) {
        let ab = AbelianGroup::new(sum.clone());
        let image = ab.unit(i);
        assert_eq!(ab.order(&image), Order::Infinite);
        let evidence = Evidence::computed(EvidenceDetail::Abelianization {
            abelianization: ab.to_string(),
            element: format!("generator of Z summand {}", i + 1),
            image: image.iter().map(|c| c.to_string()).collect(),
        });
        return Ok(GtVerdict {
            group,
            status: GtStatus::NotGt,
            evidence: vec![evidence],
        });
    }

    let (p, q) = (largest_letter(a), largest_letter(b));
    let evidence = if at_least_three(p) && at_least_three(q) {
        vec![chen_evidence(p, q)]
    } else if a.iter().chain(b).all(|&n| n == 2) {
        vec![Evidence::citation(EXPONENT_TWO_CITATION)]
    } else {
        vec![Evidence::citation(FREE_PRODUCT_CITATION)]
    };
    Ok(GtVerdict {
        group,
        status: GtStatus::NotGt,
        evidence,
    })
}

/// Chen bound for `a b`, with `a` of order `p` and `b` of order `q`.
fn chen_evidence(p: u64, q: u64) -> Evidence {
    let carrier = GroupSpec::free_product(&[p, q]);
    let g = Group::new(carrier.clone()).expect("valid spec");
    let ab = g.mul(&g.generator(0), &g.generator(1));
    let bound = chen_lower_bound(&g, &ab).expect("a b is alternating");
    Evidence::computed(EvidenceDetail::ChenBound {
        carrier,
        element: g.render(&ab),
        bound,
    })
}

/// Whether every nontrivial element of `group` gets a witness from
/// [`schema_witness`].
pub fn has_witness_schema(group: &Group) -> bool {
    if group.is_dihedral() || group.free_product_orders() == Some(&[2, 2][..]) {
        return true;
    }
    if let Some((l, r)) = group.components() {
        return has_witness_schema(l) && has_witness_schema(r);
    }
    is_finite(group)
}

fn is_finite(group: &Group) -> bool {
    match group.spec() {
        GroupSpec::Cyclic { order, .. } => *order > 0,
        GroupSpec::FgAbelian { rank, .. } => *rank == 0,
        GroupSpec::FreeProductOfCyclics { orders, .. } => orders.len() == 1 && orders[0] > 0,
        _ => false,
    }
}

/// Witness from an analytic rule: torsion witnesses in finite groups, the
/// length-two dihedral witnesses, and for direct products a lift through
/// the second projection whose kernel residual is handled in the first
/// factor.
pub fn schema_witness(group: &Group, x: &Element) -> Option<Witness> {
    if group.is_identity(x) {
        return None;
    }
    if group.is_dihedral() || group.free_product_orders() == Some(&[2, 2][..]) {
        return dinf_witness(group, x).ok();
    }
    if let Some((left, right)) = group.components() {
        let Element::Pair(l, r) = x else {
            return None;
        };
        if right.is_identity(r) {
            return embed_left(group, &schema_witness(left, l)?);
        }
        let wq = schema_witness(right, r)?;
        let p = Morphism::projection(group, Side::Right).ok()?;
        let provider = |residual: &Element| match residual {
            Element::Pair(kl, _) => embed_left(group, &schema_witness(left, kl)?),
            _ => None,
        };
        return lift_witness_gt_kernel(&p, x, &wq, &provider).ok();
    }
    if is_finite(group) {
        return torsion_witness(group, x).ok();
    }
    None
}

fn embed_left(product: &Group, w: &Witness) -> Option<Witness> {
    let (_, right) = product.components()?;
    let embed = |y: &Element| Element::pair(y.clone(), right.identity());
    let conjugators = w.conjugators().iter().map(embed).collect();
    Witness::new(product.clone(), embed(w.base()), conjugators).ok()
}

/// Verdict for a group of the zoo. `radius` bounds the sampled ball and
/// `budget` the searches run when no rule decides.
pub fn classify_group(
    group: &Group,
    radius: usize,
    budget: &SearchBudget,
) -> Result<GtVerdict, ClassifyError> {
    let name = group.to_string();
    let sample: Vec<Element> = group
        .ball(radius)
        .into_iter()
        .filter(|x| !group.is_identity(x))
        .collect();

    if has_witness_schema(group) {
        let evidence = sample
            .iter()
            .map(|x| {
                let witness = schema_witness(group, x).expect("schema covers every element");
                Evidence::computed(EvidenceDetail::Witness { witness })
            })
            .collect();
        return Ok(GtVerdict {
            group: name,
            status: GtStatus::GeneralizedTorsionGroup,
            evidence,
        });
    }

    let mut candidates = group.generators();
    candidates.extend(sample.iter().cloned());
    if let Some(x) = candidates
        .iter()
        .find(|x| abelianization_obstruction(group, x).blocked)
    {
        let evidence = Evidence::computed(EvidenceDetail::Abelianization {
            abelianization: group.abelianization().to_string(),
            element: group.render(x),
            image: group
                .abelianization_image(x)
                .iter()
                .map(|c| c.to_string())
                .collect(),
        });
        return Ok(not_gt(name, vec![evidence]));
    }

    if let Some(orders) = group.free_product_orders() {
        return Ok(classify_free_product_of_cyclics(name, orders));
    }

    if let Some((left, right)) = group.components() {
        for (side, factor) in [(Side::Left, left), (Side::Right, right)] {
            let inner = classify_group(factor, radius, budget)?;
            if inner.status == GtStatus::NotGt {
                let desk_verified = inner.evidence.iter().all(|e| e.desk_verified);
                let evidence = Evidence {
                    tier: if desk_verified { Tier::T1 } else { Tier::T2 },
                    desk_verified,
                    detail: EvidenceDetail::Factor {
                        side,
                        status: inner.status,
                        evidence: inner.evidence,
                    },
                };
                return Ok(not_gt(name, vec![evidence]));
            }
        }
    }

    let report = gt_group_survey(group, radius, budget)?;
    let evidence = Evidence::computed(EvidenceDetail::Survey {
        sampled: report.records.len(),
        found: report.count("found"),
        exhausted: report.count("exhausted"),
        max_witness_length: report.max_witness_length(),
    });
    Ok(GtVerdict {
        group: name,
        status: GtStatus::ConsistentUpToBudget,
        evidence: vec![evidence],
    })
}

fn not_gt(group: String, evidence: Vec<Evidence>) -> GtVerdict {
    GtVerdict {
        group,
        status: GtStatus::NotGt,
        evidence,
    }
}

/// Free products of finite cyclic groups, split as `Z_{n_i} ∗ (rest)` with
/// `n_i` the largest order.
fn classify_free_product_of_cyclics(name: String, orders: &[u64]) -> GtVerdict {
    if orders.len() == 2 {
        let mut v = classify_free_product(&orders[..1], &orders[1..])
            .expect("zoo orders are valid factors");
        v.group = name;
        return v;
    }
    let mut sorted = orders.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let evidence = if sorted[0] >= 3 && sorted[1] >= 3 {
        chen_evidence(sorted[0], sorted[1])
    } else {
        Evidence::citation(FREE_PRODUCT_CITATION)
    };
    not_gt(name, vec![evidence])
}

/// Torsion subgroup and free quotient of a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionDecomposition {
    pub torsion_part: GroupSpec,
    pub free_quotient_rank: usize,
    /// Why the free quotient has no generalized torsion.
    pub r_star_certificate: String,
}

impl TorsionDecomposition {
    /// `torsion_part x Z^r`.
    pub fn reconstruct(&self) -> GroupSpec {
        GroupSpec::product(
            self.torsion_part.clone(),
            GroupSpec::abelian(self.free_quotient_rank, &[]),
        )
    }
}

pub fn tr_star_decomposition(group: &Group) -> Result<TorsionDecomposition, ClassifyError> {
    let (rank, factors) = match group.spec() {
        GroupSpec::FgAbelian { rank, factors, .. } => (*rank, factors.clone()),
        GroupSpec::Cyclic { order: 0, .. } => (1, Vec::new()),
        GroupSpec::Cyclic { order, .. } => (0, vec![*order]),
        _ => return Err(ClassifyError::NotAbelian(group.to_string())),
    };
    Ok(TorsionDecomposition {
        torsion_part: GroupSpec::abelian(0, &factors),
        free_quotient_rank: rank,
        r_star_certificate: format!(
            "in Z^{rank} a product of n conjugates of g equals n*g, which is nonzero for g != 0 and n >= 1"
        ),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: String,
    pub b: String,
    pub product: String,
    pub witness: Option<Witness>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub group: String,
    pub radius: usize,
    pub ball_size: usize,
    pub torsion_count: usize,
    /// Products whose order could not be settled within the cap.
    pub undetermined: usize,
    pub conjugation_violations: usize,
    pub product_violations: Vec<Violation>,
}

impl ProbeReport {
    pub fn closed(&self) -> bool {
        self.product_violations.is_empty() && self.conjugation_violations == 0
    }
}

fn is_torsion(group: &Group, x: &Element, order_cap: u64) -> Option<bool> {
    match group.order_bounded(x, order_cap) {
        BoundedOrder::Finite(_) => Some(true),
        BoundedOrder::Infinite => Some(false),
        BoundedOrder::NotFoundWithin(_) => None,
    }
}

/// Checks whether the torsion elements of a ball are closed under products
/// and conjugation. Each product of two torsion elements that is not torsion
/// gets a witness from [`construct_prod_torsion_witness`].
pub fn tor_normality_probe(group: &Group, radius: usize, order_cap: u64) -> ProbeReport {
    let ball = group.ball(radius);
    let members: std::collections::HashSet<&Element> = ball.iter().collect();
    let torsion: Vec<&Element> = ball
        .iter()
        .filter(|x| is_torsion(group, x, order_cap) == Some(true))
        .collect();

    let mut undetermined = 0;
    let mut product_violations = Vec::new();
    for a in &torsion {
        for b in &torsion {
            let product = group.mul(a, b);
            if !members.contains(&product) {
                continue;
            }
            match is_torsion(group, &product, order_cap) {
                Some(true) => {}
                None => undetermined += 1,
                Some(false) => {
                    let (witness, error) = match construct_prod_torsion_witness(group, a, b) {
                        Ok(w) => (Some(w), None),
                        Err(e) => (None, Some(e.to_string())),
                    };
                    product_violations.push(Violation {
                        a: group.render(a),
                        b: group.render(b),
                        product: group.render(&product),
                        witness,
                        error,
                    });
                }
            }
        }
    }

    let conjugation_violations = torsion
        .iter()
        .flat_map(|t| ball.iter().map(move |y| group.conjugate(y, t)))
        .filter(|c| members.contains(c) && is_torsion(group, c, order_cap) == Some(false))
        .count();

    ProbeReport {
        group: group.to_string(),
        radius,
        ball_size: ball.len(),
        torsion_count: torsion.len(),
        undetermined,
        conjugation_violations,
        product_violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureCheck {
    pub item: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub checks: Vec<ClosureCheck>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Scripted checks that generalized torsion groups are closed under
/// quotients and extensions but not under subgroups.
pub fn closure_suite() -> ClosureReport {
    ClosureReport {
        checks: vec![quotient_check(), extension_check(), subgroup_check()],
    }
}

fn dinf() -> Group {
    Group::new(GroupSpec::dihedral()).expect("valid spec")
}

fn dinf_squared() -> Group {
    Group::new(GroupSpec::product(
        GroupSpec::dihedral(),
        GroupSpec::dihedral(),
    ))
    .expect("valid spec")
}

fn describe_push(p: &Morphism, w: &Witness) -> (bool, String) {
    let source = w.group().render(w.base());
    match push_witness(p, w) {
        Ok(Pushed::Witness(pushed)) => (
            pushed.verify(),
            format!(
                "{} -> {}: {} pushes to {} with {} conjugators",
                p.domain(),
                p.codomain(),
                source,
                pushed.group().render(pushed.base()),
                pushed.len()
            ),
        ),
        Ok(Pushed::Collapsed) => (
            p.codomain().is_identity(&p.apply(w.base())),
            format!("{} -> {}: {} collapses", p.domain(), p.codomain(), source),
        ),
        Err(e) => (false, format!("{source}: {e}")),
    }
}

fn quotient_check() -> ClosureCheck {
    let d = dinf();
    let mut details = Vec::new();
    let mut passed = true;
    for x in d.ball(2).into_iter().filter(|x| !d.is_identity(x)) {
        let w = dinf_witness(&d, &x).expect("dihedral witness");
        for p in [Morphism::dinf_iso(), Morphism::dihedral_parity()] {
            let (ok, line) = describe_push(&p, &w);
            passed &= ok;
            details.push(line);
        }
    }
    let dd = dinf_squared();
    let proj = Morphism::projection(&dd, Side::Right).expect("projection");
    for x in ["k_1 k_2", "g_1 k_2", "k_1"] {
        let x = dd.parse(x).expect("valid word");
        let w = schema_witness(&dd, &x).expect("product schema");
        let (ok, line) = describe_push(&proj, &w);
        passed &= ok;
        details.push(line);
    }
    ClosureCheck {
        item: "i",
        claim: "quotients of generalized torsion groups are generalized torsion groups",
        passed,
        details,
    }
}

fn extension_check() -> ClosureCheck {
    let dd = dinf_squared();
    let elements: Vec<Element> = dd
        .ball(3)
        .into_iter()
        .filter(|x| !dd.is_identity(x))
        .collect();
    let witnesses: Vec<Option<Witness>> = elements.iter().map(|x| schema_witness(&dd, x)).collect();
    let found = witnesses.iter().flatten().filter(|w| w.verify()).count();
    let max_len = witnesses
        .iter()
        .flatten()
        .map(Witness::len)
        .max()
        .unwrap_or(0);
    let kk = dd.parse("k_1 k_2").expect("valid word");
    let kk_len = schema_witness(&dd, &kk).map(|w| w.len());
    ClosureCheck {
        item: "iii",
        claim: "an extension of a generalized torsion group by one is a generalized torsion group",
        passed: found == elements.len() && kk_len == Some(4),
        details: vec![
            format!(
                "{dd}: {found} of {} nontrivial elements of the radius-3 ball have lifted witnesses, longest {max_len}",
                elements.len()
            ),
            format!("(k, k): lifted witness of length {}", kk_len.unwrap_or(0)),
        ],
    }
}

/// Powers `k^n` for `0 < |n| ≤ 4`.
pub fn subgroup_check_powers() -> Vec<i64> {
    (-4..=4).filter(|&n| n != 0).collect()
}

fn subgroup_check() -> ClosureCheck {
    let d = dinf();
    let z = Group::new(GroupSpec::cyclic(0)).expect("valid spec");
    let budget = SearchBudget::new(4, 1, 10_000);
    let mut passed = true;
    let mut details = Vec::new();
    for n in subgroup_check_powers() {
        let in_d = d.pow(&d.generator(0), &BigInt::from(n));
        let found = crate::search::search_witness(&d, &in_d, &budget)
            .map(|o| o.witness().map(Witness::len))
            .ok()
            .flatten();
        let pruned = crate::search::search_witness(&z, &Element::integer(n), &budget)
            .map(|o| o.is_pruned())
            .unwrap_or(false);
        passed &= found == Some(2) && pruned;
        details.push(format!(
            "k^{n}: {} in D_inf, {} in Z",
            found.map_or("no witness".to_string(), |l| format!(
                "witness of length {l}"
            )),
            if pruned { "pruned" } else { "not pruned" }
        ));
    }
    ClosureCheck {
        item: "iv",
        claim: "the subgroup <k> = Z of D_inf has no generalized torsion although k does in D_inf",
        passed,
        details,
    }
}
