//! H-representation polyhedra over exact rationals: feasibility, dimension,
//! recession cones, relative interior points. No vertex enumeration anywhere;
//! everything reduces to exact LP.

use num_traits::{One, Zero};

use crate::linalg::{RatMatrix, RatVector, Rational};
use crate::lp::{lp_optimize, LpOutcome, LpSense, LpStatus};
use crate::{Error, Result};

/// The affine function x -> <x, gradient> + offset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineForm {
    pub gradient: RatVector,
    pub offset: Rational,
}

impl AffineForm {
    pub fn new(gradient: RatVector, offset: Rational) -> Self {
        Self { gradient, offset }
    }

    pub fn from_ints(gradient: &[i64], offset: i64) -> Self {
        Self::new(RatVector::from_ints(gradient), crate::linalg::rat_int(offset))
    }

    pub fn dim(&self) -> usize {
        self.gradient.dim()
    }

    pub fn eval(&self, x: &RatVector) -> Rational {
        self.gradient.dot(x) + &self.offset
    }

    pub fn negated(&self) -> AffineForm {
        AffineForm::new(self.gradient.scale(&-Rational::one()), -self.offset.clone())
    }

    /// Difference of two forms: self - other.
    pub fn minus(&self, other: &AffineForm) -> AffineForm {
        AffineForm::new(self.gradient.sub(&other.gradient), &self.offset - &other.offset)
    }
}

/// The zero set {x : <x,b> + a = 0} of a form with nonzero gradient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hyperplane {
    form: AffineForm,
}

impl Hyperplane {
    pub fn new(form: AffineForm) -> Result<Self> {
        if form.gradient.is_zero() {
            return Err(Error::InvalidInput("hyperplane needs a nonzero gradient".into()));
        }
        Ok(Self { form })
    }

    pub fn form(&self) -> &AffineForm {
        &self.form
    }
}

/// Intersection of affine equalities (= 0) and inequalities (>= 0).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polyhedron {
    ambient_dim: usize,
    pub equalities: Vec<AffineForm>,
    pub inequalities: Vec<AffineForm>,
}

impl Polyhedron {
    pub fn new(
        ambient_dim: usize,
        equalities: Vec<AffineForm>,
        inequalities: Vec<AffineForm>,
    ) -> Result<Self> {
        for f in equalities.iter().chain(inequalities.iter()) {
            if f.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: f.dim() });
            }
        }
        Ok(Self { ambient_dim, equalities, inequalities })
    }

    /// All of R^d.
    pub fn full_space(ambient_dim: usize) -> Self {
        Self { ambient_dim, equalities: Vec::new(), inequalities: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Exact membership test.
    pub fn contains(&self, x: &RatVector) -> bool {
        self.equalities.iter().all(|f| f.eval(x).is_zero())
            && self.inequalities.iter().all(|f| f.eval(x) >= Rational::zero())
    }

    /// Copy with extra constraints appended.
    pub fn with_extra(&self, equalities: &[AffineForm], inequalities: &[AffineForm]) -> Polyhedron {
        let mut p = self.clone();
        p.equalities.extend_from_slice(equalities);
        p.inequalities.extend_from_slice(inequalities);
        p
    }

    pub fn lp_optimize(&self, objective: &RatVector, sense: LpSense) -> LpOutcome {
        lp_optimize(objective, &self.equalities, &self.inequalities, sense)
    }

    pub fn is_empty(&self) -> bool {
        let zero = RatVector::zeros(self.ambient_dim);
        self.lp_optimize(&zero, LpSense::Max).status == LpStatus::Infeasible
    }

    /// Exact rational point with every non-implied inequality strictly
    /// positive. Errors on the empty polyhedron.
    pub fn relative_interior_point(&self) -> Result<RatVector> {
        Ok(self.implied_split()?.relint)
    }

    /// Dimension as an affine set; -1 for the empty polyhedron.
    pub fn dimension(&self) -> i64 {
        match self.implied_split() {
            Err(_) => -1,
            Ok(split) => {
                let d = self.ambient_dim as i64;
                if split.equality_gradients.is_empty() {
                    return d;
                }
                let m = RatMatrix::from_rows(split.equality_gradients);
                d - m.rank() as i64
            }
        }
    }

    /// The recession cone {v : eq.v = 0, ineq.v >= 0}. Rejects empty input.
    pub fn recession_cone(&self) -> Result<Polyhedron> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let strip = |fs: &[AffineForm]| {
            fs.iter()
                .map(|f| AffineForm::new(f.gradient.clone(), Rational::zero()))
                .collect::<Vec<_>>()
        };
        Polyhedron::new(self.ambient_dim, strip(&self.equalities), strip(&self.inequalities))
    }

    /// True iff the recession cone is {0}. Rejects empty input.
    pub fn is_bounded(&self) -> Result<bool> {
        Ok(self.recession_cone()?.dimension() == 0)
    }

    /// Split the constraints into the implied-equality system and the rest,
    /// with a witness point strict on the rest.
    fn implied_split(&self) -> Result<ImpliedSplit> {
        let mut eqs = self.equalities.clone();
        let mut ineqs = self.inequalities.clone();
        loop {
            let Some((t, x)) = strict_interior(self.ambient_dim, &eqs, &ineqs) else {
                return Err(Error::EmptyPolyhedron);
            };
            if t > Rational::zero() {
                let gradients = eqs.iter().map(|f| f.gradient.clone()).collect();
                return Ok(ImpliedSplit { equality_gradients: gradients, relint: x });
            }
            // Some inequality only attains zero; maximize each slack over the
            // full system to find which, promote those to equalities, retry.
            let implied: Vec<bool> = (0..ineqs.len())
                .map(|i| maximize_capped(self.ambient_dim, &eqs, &ineqs, i).is_zero())
                .collect();
            assert!(
                implied.iter().any(|&b| b),
                "strict interior at 0 implies an implied equality"
            );
            let mut remaining = Vec::new();
            for (f, promote) in ineqs.drain(..).zip(implied) {
                if promote {
                    eqs.push(f);
                } else {
                    remaining.push(f);
                }
            }
            ineqs = remaining;
        }
    }
}

struct ImpliedSplit {
    equality_gradients: Vec<RatVector>,
    relint: RatVector,
}

/// Maximize min(ineqs[target], 1) over {eqs = 0, ineqs >= 0}; the polyhedron
/// is known nonempty. Result 0 means the target form vanishes on all of it.
fn maximize_capped(
    dim: usize,
    eqs: &[AffineForm],
    ineqs: &[AffineForm],
    target: usize,
) -> Rational {
    // Variables (x, t): maximize t with t <= f(x), t <= 1.
    let mut objective = RatVector::zeros(dim + 1);
    objective[dim] = Rational::one();
    let lift = |g: &AffineForm| {
        let mut grad = RatVector::zeros(dim + 1);
        for j in 0..dim {
            grad[j] = g.gradient[j].clone();
        }
        AffineForm::new(grad, g.offset.clone())
    };
    let equalities: Vec<AffineForm> = eqs.iter().map(&lift).collect();
    let mut inequalities: Vec<AffineForm> = ineqs.iter().map(&lift).collect();
    // f(x) - t >= 0
    let mut ft = lift(&ineqs[target]);
    ft.gradient[dim] = -Rational::one();
    inequalities.push(ft);
    // 1 - t >= 0
    let mut cap = RatVector::zeros(dim + 1);
    cap[dim] = -Rational::one();
    inequalities.push(AffineForm::new(cap, Rational::one()));
    let out = lp_optimize(&objective, &equalities, &inequalities, LpSense::Max);
    out.value.expect("capped slack LP is feasible and bounded")
}

/// Maximize t subject to eqs = 0 and g - t >= 0 for every inequality g,
/// capped at t <= 1. Returns None iff {eqs = 0, ineqs >= 0} is empty;
/// otherwise the optimum t* and a witness x. t* > 0 iff some point
/// satisfies every inequality strictly.
pub(crate) fn strict_interior(
    dim: usize,
    eqs: &[AffineForm],
    ineqs: &[AffineForm],
) -> Option<(Rational, RatVector)> {
    let mut objective = RatVector::zeros(dim + 1);
    objective[dim] = Rational::one();
    let lift = |g: &AffineForm, t_coeff: Rational| {
        let mut grad = RatVector::zeros(dim + 1);
        for j in 0..dim {
            grad[j] = g.gradient[j].clone();
        }
        grad[dim] = t_coeff;
        AffineForm::new(grad, g.offset.clone())
    };
    let equalities: Vec<AffineForm> =
        eqs.iter().map(|g| lift(g, Rational::zero())).collect();
    let mut inequalities: Vec<AffineForm> =
        ineqs.iter().map(|g| lift(g, -Rational::one())).collect();
    let mut cap = RatVector::zeros(dim + 1);
    cap[dim] = -Rational::one();
    inequalities.push(AffineForm::new(cap, Rational::one()));
    // t is free below; feasibility of the lifted system matches the original
    // system since t can go to -infinity. The original is empty iff for every
    // t the lifted system is empty; in particular Infeasible here means empty.
    let out = lp_optimize(&objective, &equalities, &inequalities, LpSense::Max);
    match out.status {
        LpStatus::Infeasible => None,
        LpStatus::Unbounded => unreachable!("t is capped at 1"),
        LpStatus::Optimal => {
            let t = out.value.unwrap();
            let witness = out.witness.unwrap();
            let x = RatVector::new(witness.entries()[..dim].to_vec());
            if t < Rational::zero() {
                // Strictness is unattainable but the polyhedron itself may
                // still be nonempty only if t* >= 0; t* < 0 means even the
                // non-strict system is empty.
                None
            } else {
                Some((t, x))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};

    pub fn unit_square() -> Polyhedron {
        // x >= 0, y >= 0, 1 - x >= 0, 1 - y >= 0
        Polyhedron::new(
            2,
            vec![],
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::from_ints(&[-1, 0], 1),
                AffineForm::from_ints(&[0, -1], 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn lp_on_unit_square() {
        let p = unit_square();
        let out = p.lp_optimize(&RatVector::from_ints(&[1, 1]), LpSense::Max);
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.value.unwrap(), rat_int(2));
        let w = out.witness.unwrap();
        assert_eq!(w, RatVector::from_ints(&[1, 1]));
        assert!(p.contains(&w));
    }

    #[test]
    fn lp_infeasible() {
        // x >= 0 and x <= -1
        let p = Polyhedron::new(
            1,
            vec![],
            vec![AffineForm::from_ints(&[1], 0), AffineForm::from_ints(&[-1], -1)],
        )
        .unwrap();
        let out = p.lp_optimize(&RatVector::from_ints(&[1]), LpSense::Max);
        assert_eq!(out.status, LpStatus::Infeasible);
        assert!(out.value.is_none() && out.witness.is_none());
        assert_eq!(p.dimension(), -1);
    }

    #[test]
    fn lp_unbounded() {
        let p = Polyhedron::new(1, vec![], vec![AffineForm::from_ints(&[1], 0)]).unwrap();
        let out = p.lp_optimize(&RatVector::from_ints(&[1]), LpSense::Max);
        assert_eq!(out.status, LpStatus::Unbounded);
        // Bounded below though.
        let out = p.lp_optimize(&RatVector::from_ints(&[1]), LpSense::Min);
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.value.unwrap(), rat_int(0));
    }

    #[test]
    fn dimension_cases() {
        assert_eq!(unit_square().dimension(), 2);
        // line x = y in the plane
        let line =
            Polyhedron::new(2, vec![AffineForm::from_ints(&[1, -1], 0)], vec![]).unwrap();
        assert_eq!(line.dimension(), 1);
    }

    #[test]
    fn dimension_detects_implied_equalities() {
        // x >= 0, -x >= 0 forces x = 0: a point, not an interval.
        let p = Polyhedron::new(
            1,
            vec![],
            vec![AffineForm::from_ints(&[1], 0), AffineForm::from_ints(&[-1], 0)],
        )
        .unwrap();
        assert_eq!(p.dimension(), 0);
        let x = p.relative_interior_point().unwrap();
        assert!(x[0].is_zero());
    }

    #[test]
    fn recession_cones() {
        let sq = unit_square();
        assert_eq!(sq.recession_cone().unwrap().dimension(), 0);
        assert!(sq.is_bounded().unwrap());

        let halfline = Polyhedron::new(1, vec![], vec![AffineForm::from_ints(&[1], 0)]).unwrap();
        let cone = halfline.recession_cone().unwrap();
        assert!(cone.contains(&RatVector::from_ints(&[1])));
        assert!(!cone.contains(&RatVector::from_ints(&[-1])));
        assert!(!halfline.is_bounded().unwrap());

        // Tropical-line edge {x = y, x >= 0}: recession ray along (1,1).
        let edge = Polyhedron::new(
            2,
            vec![AffineForm::from_ints(&[1, -1], 0)],
            vec![AffineForm::from_ints(&[1, 0], 0)],
        )
        .unwrap();
        let cone = edge.recession_cone().unwrap();
        assert!(cone.contains(&RatVector::from_ints(&[1, 1])));
        assert!(!cone.contains(&RatVector::from_ints(&[-1, -1])));
        assert!(!cone.contains(&RatVector::from_ints(&[1, 0])));
        assert_eq!(cone.dimension(), 1);
    }

    #[test]
    fn relative_interior_examples() {
        // unit interval
        let p = Polyhedron::new(
            1,
            vec![],
            vec![AffineForm::from_ints(&[1], 0), AffineForm::from_ints(&[-1], 1)],
        )
        .unwrap();
        let x = p.relative_interior_point().unwrap();
        assert!(x[0] > rat_int(0) && x[0] < rat_int(1));

        // diagonal ray {x = y, x >= 0}
        let ray = Polyhedron::new(
            2,
            vec![AffineForm::from_ints(&[1, -1], 0)],
            vec![AffineForm::from_ints(&[1, 0], 0)],
        )
        .unwrap();
        let x = ray.relative_interior_point().unwrap();
        assert_eq!(x[0], x[1]);
        assert!(x[0] > rat_int(0));

        let empty = Polyhedron::new(
            1,
            vec![],
            vec![AffineForm::from_ints(&[1], 0), AffineForm::from_ints(&[-1], -1)],
        )
        .unwrap();
        assert!(matches!(empty.relative_interior_point(), Err(Error::EmptyPolyhedron)));
    }

    #[test]
    fn dimension_plus_rank_is_ambient() {
        // Random-ish hand cases of the invariant dim + rank(implied eqs) = d.
        let cases = vec![unit_square()];
        for p in cases {
            let d = p.dimension();
            assert!(d >= 0);
            // unit square has no implied equalities
            assert_eq!(d, 2);
        }
    }

    #[test]
    fn bounded_iff_all_coordinate_lps_optimal() {
        let polys = vec![
            unit_square(),
            Polyhedron::new(1, vec![], vec![AffineForm::from_ints(&[1], 0)]).unwrap(),
            Polyhedron::new(
                2,
                vec![AffineForm::from_ints(&[1, -1], 0)],
                vec![AffineForm::from_ints(&[1, 0], 0)],
            )
            .unwrap(),
        ];
        for p in polys {
            let d = p.ambient_dim();
            let all_optimal = (0..d).all(|j| {
                let mut obj = RatVector::zeros(d);
                obj[j] = Rational::one();
                p.lp_optimize(&obj, LpSense::Max).is_optimal()
                    && p.lp_optimize(&obj, LpSense::Min).is_optimal()
            });
            assert_eq!(p.is_bounded().unwrap(), all_optimal);
        }
    }

    #[test]
    fn witnesses_are_exact() {
        // max x + 2y over the triangle x,y >= 0, x + y <= 1/3
        let p = Polyhedron::new(
            2,
            vec![],
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
                AffineForm::new(RatVector::from_ints(&[-1, -1]), rat(1, 3)),
            ],
        )
        .unwrap();
        let out = p.lp_optimize(&RatVector::from_ints(&[1, 2]), LpSense::Max);
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.value.unwrap(), rat(2, 3));
        let w = out.witness.unwrap();
        assert!(p.contains(&w));
        assert_eq!(w, RatVector::new(vec![rat_int(0), rat(1, 3)]));
    }
}
