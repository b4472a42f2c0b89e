//! Exact kernel for box-bounded difference-constraint maximisation, plus the
//! integral enumeration oracle used to cross-check it.
//!
//! The constraint matrix (unit box rows plus signed difference rows) is
//! totally unimodular, so after clearing denominators every simplex basis has
//! determinant ±1: the tableau stays integral, every pivot element is ±1 and
//! all arithmetic runs in machine integers. Rationals appear only at the
//! interface. For the same reason, whenever the box data are integers the
//! vertex solution itself is integral; it is asserted, never rounded.

use crate::rational::Rational;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Symmetric difference constraint `|x_i - x_j| <= bound`.
///
/// The reduced curvature programmes always use `bound = 1` (the paper's
/// incidence rows); the full programme uses the capped graph distance.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffEdge {
    pub i: usize,
    pub j: usize,
    pub bound: Rational,
}

impl DiffEdge {
    pub fn unit(i: usize, j: usize) -> Self {
        DiffEdge {
            i,
            j,
            bound: Rational::one(),
        }
    }
}

/// Maximisation of `cost . x` over box bounds and difference constraints.
///
/// A missing box side is admitted only when a difference chain to a bounded
/// variable implies one; it is completed before solving.
#[derive(Clone, Debug, Default)]
pub struct LinearProgramme {
    pub var_count: usize,
    pub cost: Vec<Rational>,
    pub lower: Vec<Option<Rational>>,
    pub upper: Vec<Option<Rational>>,
    pub diff_edges: Vec<DiffEdge>,
}

impl LinearProgramme {
    pub fn new(var_count: usize) -> Self {
        LinearProgramme {
            var_count,
            cost: vec![Rational::zero(); var_count],
            lower: vec![None; var_count],
            upper: vec![None; var_count],
            diff_edges: Vec::new(),
        }
    }

    pub fn set_box(&mut self, i: usize, lower: Rational, upper: Rational) {
        self.lower[i] = Some(lower);
        self.upper[i] = Some(upper);
    }

    pub fn add_diff(&mut self, i: usize, j: usize, bound: Rational) {
        self.diff_edges.push(DiffEdge { i, j, bound });
    }
}

/// Exact optimum with witness.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub value: Rational,
    pub witness: Vec<Rational>,
    /// Present when every box and difference bound is an integer; in that
    /// case the vertex solution is itself integral.
    pub integral_witness: Option<Vec<i64>>,
}

/// Default assignment budget for [`brute_force_box`].
pub const BRUTE_FORCE_ASSIGNMENT_BUDGET: u128 = 10_000_000;

fn validate(lp: &LinearProgramme) -> Result<()> {
    if lp.cost.len() != lp.var_count
        || lp.lower.len() != lp.var_count
        || lp.upper.len() != lp.var_count
    {
        return Err(Error::BadParameter {
            message: "LP vector lengths disagree with var_count".into(),
        });
    }
    for e in &lp.diff_edges {
        if e.i >= lp.var_count || e.j >= lp.var_count || e.i == e.j {
            return Err(Error::BadParameter {
                message: format!("bad difference edge ({}, {})", e.i, e.j),
            });
        }
        if e.bound.is_negative() {
            return Err(Error::BadParameter {
                message: format!("negative difference bound on ({}, {})", e.i, e.j),
            });
        }
    }
    for i in 0..lp.var_count {
        if let (Some(l), Some(u)) = (&lp.lower[i], &lp.upper[i]) {
            if l > u {
                return Err(Error::Infeasible {
                    constraint: format!("empty box on x{i}: {l} > {u}"),
                });
            }
        }
    }
    Ok(())
}

/// Completed bounds: both sides finite for every variable, possibly after
/// difference-chain propagation and value-preserving pinning of components
/// that are free on one side.
fn complete_bounds(lp: &LinearProgramme) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let n = lp.var_count;
    let mut lower = lp.lower.clone();
    let mut upper = lp.upper.clone();

    // connected components of the difference graph
    let mut comp = vec![usize::MAX; n];
    let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for e in &lp.diff_edges {
        adj[e.i].push((e.j, e.bound.clone()));
        adj[e.j].push((e.i, e.bound.clone()));
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for (y, _) in &adj[x] {
                if comp[*y] == usize::MAX {
                    comp[*y] = id;
                    members.push(*y);
                    stack.push(*y);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }

    for members in &comps {
        let complete_already = members
            .iter()
            .all(|&i| lower[i].is_some() && upper[i].is_some());
        if complete_already {
            continue;
        }

        // shortest bound-sum distances inside the component
        let k = members.len();
        let pos = |v: usize| members.binary_search(&v).unwrap();
        let inf: Option<Rational> = None;
        let mut dist: Vec<Vec<Option<Rational>>> = vec![vec![inf; k]; k];
        for (p, &v) in members.iter().enumerate() {
            dist[p][p] = Some(Rational::zero());
            for (w, b) in &adj[v] {
                let q = pos(*w);
                let better = match &dist[p][q] {
                    None => true,
                    Some(d) => b < d,
                };
                if better {
                    dist[p][q] = Some(b.clone());
                }
            }
        }
        for m in 0..k {
            for p in 0..k {
                for q in 0..k {
                    if let (Some(a), Some(b)) = (&dist[p][m], &dist[m][q]) {
                        let through = a + b;
                        if dist[p][q].as_ref().map_or(true, |d| &through < d) {
                            dist[p][q] = Some(through);
                        }
                    }
                }
            }
        }

        let cost_sum: Rational = members.iter().map(|&i| lp.cost[i].clone()).sum();
        let has_lower = members.iter().any(|&i| lower[i].is_some());
        let has_upper = members.iter().any(|&i| upper[i].is_some());

        let member_names = || {
            members
                .iter()
                .map(|i| format!("x{i}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        if !has_upper && cost_sum.is_positive() {
            return Err(Error::Unbounded {
                ray: format!("+1 on {}", member_names()),
            });
        }
        if !has_lower && cost_sum.is_negative() {
            return Err(Error::Unbounded {
                ray: format!("-1 on {}", member_names()),
            });
        }
        if !has_lower && !has_upper {
            // objective is translation-invariant on this component; pin the
            // smallest variable
            let anchor = members[0];
            lower[anchor] = Some(Rational::zero());
            upper[anchor] = Some(Rational::zero());
        } else {
            let sum_bounds: Rational = lp
                .diff_edges
                .iter()
                .filter(|e| comp[e.i] == comp[members[0]])
                .map(|e| e.bound.clone())
                .sum();
            let slack = sum_bounds + Rational::one();
            if !has_lower {
                // every optimum can be translated up against some upper bound
                let min_u = members
                    .iter()
                    .filter_map(|&i| upper[i].clone())
                    .min()
                    .unwrap();
                for &i in members {
                    lower[i] = Some(&min_u - &slack);
                }
            }
            if !has_upper {
                let max_l = members
                    .iter()
                    .filter_map(|&i| lower[i].clone())
                    .max()
                    .unwrap();
                for &i in members {
                    upper[i] = Some(&max_l + &slack);
                }
            }
        }

        // implied bounds along the widest difference chain
        for (p, &i) in members.iter().enumerate() {
            if lower[i].is_none() {
                let best = members
                    .iter()
                    .enumerate()
                    .filter_map(|(q, &j)| match (&lower[j], &dist[p][q]) {
                        (Some(l), Some(d)) => Some(l - d),
                        _ => None,
                    })
                    .max();
                lower[i] = best;
            }
            if upper[i].is_none() {
                let best = members
                    .iter()
                    .enumerate()
                    .filter_map(|(q, &j)| match (&upper[j], &dist[p][q]) {
                        (Some(u), Some(d)) => Some(u + d),
                        _ => None,
                    })
                    .min();
                upper[i] = best;
            }
            if lower[i].is_none() || upper[i].is_none() {
                return Err(Error::BadParameter {
                    message: format!("x{i} has no box side and no difference chain implying one"),
                });
            }
            if lower[i].as_ref().unwrap() > upper[i].as_ref().unwrap() {
                return Err(Error::Infeasible {
                    constraint: format!(
                        "implied box on x{i} is empty: {} > {}",
                        lower[i].as_ref().unwrap(),
                        upper[i].as_ref().unwrap()
                    ),
                });
            }
        }
    }

    Ok((
        lower.into_iter().map(Option::unwrap).collect(),
        upper.into_iter().map(Option::unwrap).collect(),
    ))
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        l = l.lcm(v.denom());
    }
    l
}

fn to_i128(b: &BigInt) -> Result<i128> {
    b.to_i128().ok_or(Error::LpDataTooLarge)
}

#[derive(Clone, Debug)]
enum RowKind {
    BoxUpper(usize),
    DiffPlus(usize, usize),
    DiffMinus(usize, usize),
}

impl RowKind {
    fn describe(&self, lp: &LinearProgramme) -> String {
        match self {
            RowKind::BoxUpper(i) => format!(
                "x{i} <= {}",
                lp.upper[*i]
                    .as_ref()
                    .map_or_else(|| "(implied)".to_string(), |u| u.to_string())
            ),
            RowKind::DiffPlus(i, j) | RowKind::DiffMinus(i, j) => {
                let b = lp
                    .diff_edges
                    .iter()
                    .find(|e| (e.i, e.j) == (*i, *j) || (e.i, e.j) == (*j, *i))
                    .map_or_else(|| "?".to_string(), |e| e.bound.to_string());
                format!("|x{i} - x{j}| <= {b}")
            }
        }
    }
}

struct Tableau {
    /// rows of the constraint matrix, rhs in the last column
    rows: Vec<Vec<i128>>,
    /// reduced-cost row; last entry tracks the negated objective value
    obj: Vec<i128>,
    basis: Vec<usize>,
    n_total: usize,
    artificial_from: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, s: usize) {
        let p = self.rows[r][s];
        assert!(
            p == 1 || p == -1,
            "pivot on a totally unimodular tableau must be +-1, got {p}"
        );
        if p == -1 {
            for e in self.rows[r].iter_mut() {
                *e = -*e;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[s];
            if f != 0 {
                for (e, pe) in row.iter_mut().zip(&pivot_row) {
                    *e -= f * pe;
                }
            }
        }
        let f = self.obj[s];
        if f != 0 {
            for (e, pe) in self.obj.iter_mut().zip(&pivot_row) {
                *e -= f * pe;
            }
        }
        self.basis[r] = s;
    }

    /// Bland's rule iteration until no entering column remains.
    /// Returns the entering column that proves unboundedness, if any.
    fn run(&mut self, enterable: impl Fn(usize) -> bool) -> Option<usize> {
        loop {
            let mut entering = None;
            for j in 0..self.n_total {
                if self.obj[j] > 0 && enterable(j) {
                    entering = Some(j);
                    break;
                }
            }
            let Some(s) = entering else {
                return None;
            };

            let rhs = self.n_total;
            let mut leaving: Option<usize> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][s] <= 0 {
                    continue;
                }
                match leaving {
                    None => leaving = Some(r),
                    Some(best) => {
                        // compare rhs[r]/a[r][s] with rhs[best]/a[best][s]
                        let lhs = self.rows[r][rhs] * self.rows[best][s];
                        let rhsv = self.rows[best][rhs] * self.rows[r][s];
                        let better = lhs < rhsv
                            || (lhs == rhsv && self.basis[r] < self.basis[best]);
                        if better {
                            leaving = Some(r);
                        }
                    }
                }
            }
            match leaving {
                Some(r) => self.pivot(r, s),
                None => return Some(s),
            }
        }
    }
}

/// Exact optimum of a box-and-difference maximisation.
///
/// Errors are `Infeasible` with an offending constraint, `Unbounded` with an
/// improving ray, or parameter problems.
pub fn solve_lp(lp: &LinearProgramme) -> Result<LpSolution> {
    validate(lp)?;
    let n = lp.var_count;
    if n == 0 {
        return Ok(LpSolution {
            value: Rational::zero(),
            witness: Vec::new(),
            integral_witness: Some(Vec::new()),
        });
    }
    let (lower, upper) = complete_bounds(lp)?;

    // clear denominators: z = scale * x keeps the difference structure
    let scale = lcm_of_denominators(
        lower
            .iter()
            .chain(upper.iter())
            .chain(lp.diff_edges.iter().map(|e| &e.bound)),
    );
    let cost_scale = lcm_of_denominators(lp.cost.iter());
    let scale_rat = Rational::from(scale.clone());
    let cost_scale_rat = Rational::from(cost_scale.clone());

    let lower_int: Vec<i128> = lower
        .iter()
        .map(|l| to_i128((l * &scale_rat).numer()))
        .collect::<Result<_>>()?;
    let upper_int: Vec<i128> = upper
        .iter()
        .map(|u| to_i128((u * &scale_rat).numer()))
        .collect::<Result<_>>()?;
    let cost_int: Vec<i128> = lp
        .cost
        .iter()
        .map(|c| to_i128((c * &cost_scale_rat).numer()))
        .collect::<Result<_>>()?;

    // standard form rows over y = z - lower_int >= 0
    let mut row_data: Vec<(Vec<(usize, i128)>, i128, RowKind)> = Vec::new();
    for i in 0..n {
        row_data.push((
            vec![(i, 1)],
            upper_int[i] - lower_int[i],
            RowKind::BoxUpper(i),
        ));
    }
    for e in &lp.diff_edges {
        let b = to_i128((&e.bound * &scale_rat).numer())?;
        row_data.push((
            vec![(e.i, 1), (e.j, -1)],
            b - lower_int[e.i] + lower_int[e.j],
            RowKind::DiffPlus(e.i, e.j),
        ));
        row_data.push((
            vec![(e.j, 1), (e.i, -1)],
            b + lower_int[e.i] - lower_int[e.j],
            RowKind::DiffMinus(e.i, e.j),
        ));
    }

    let m = row_data.len();
    let n_slack = m;
    let negative_rows: Vec<usize> = row_data
        .iter()
        .enumerate()
        .filter(|(_, (_, b, _))| *b < 0)
        .map(|(r, _)| r)
        .collect();
    let n_art = negative_rows.len();
    let n_total = n + n_slack + n_art;

    let mut rows = vec![vec![0i128; n_total + 1]; m];
    let mut basis = vec![0usize; m];
    let mut art_col_of_row = vec![usize::MAX; m];
    let mut next_art = n + n_slack;
    for (r, (coeffs, b, _)) in row_data.iter().enumerate() {
        let negate = *b < 0;
        let sign = if negate { -1 } else { 1 };
        for &(j, a) in coeffs {
            rows[r][j] = sign * a;
        }
        rows[r][n + r] = sign; // slack (surplus when negated)
        rows[r][n_total] = sign * b;
        if negate {
            rows[r][next_art] = 1;
            basis[r] = next_art;
            art_col_of_row[r] = next_art;
            next_art += 1;
        } else {
            basis[r] = n + r;
        }
    }

    let mut t = Tableau {
        rows,
        obj: vec![0i128; n_total + 1],
        basis,
        n_total,
        artificial_from: n + n_slack,
    };

    // phase 1: drive the artificial variables to zero by maximising -sum(t);
    // expressed in the nonbasic variables that objective has reduced cost
    // +sum of the artificial rows, and the rhs slot starts at sum(t) = -value
    if n_art > 0 {
        for r in 0..m {
            if art_col_of_row[r] != usize::MAX {
                for j in 0..=n_total {
                    t.obj[j] += t.rows[r][j];
                }
            }
        }
        for c in t.artificial_from..n_total {
            t.obj[c] = 0;
        }
        let unbounded = t.run(|_| true);
        debug_assert!(unbounded.is_none(), "phase 1 objective is bounded by zero");
        let infeasibility = t.obj[n_total];
        if infeasibility != 0 {
            let offending = (0..m)
                .find(|&r| t.basis[r] >= t.artificial_from && t.rows[r][n_total] != 0)
                .map(|r| row_data[r].2.describe(lp))
                .unwrap_or_else(|| "constraint system".to_string());
            return Err(Error::Infeasible {
                constraint: offending,
            });
        }
        // pivot remaining zero-valued artificials out where possible
        for r in 0..m {
            if t.basis[r] >= t.artificial_from {
                if let Some(s) = (0..t.artificial_from).find(|&j| t.rows[r][j] != 0) {
                    t.pivot(r, s);
                }
            }
        }
    }

    // phase 2: the real objective, priced out against the current basis
    t.obj = vec![0i128; n_total + 1];
    for j in 0..n {
        t.obj[j] = cost_int[j];
    }
    for r in 0..m {
        let b = t.basis[r];
        if b < n && cost_int[b] != 0 {
            let f = cost_int[b];
            let row = t.rows[r].clone();
            for (e, re) in t.obj.iter_mut().zip(&row) {
                *e -= f * re;
            }
        }
    }
    let art_from = t.artificial_from;
    if let Some(s) = t.run(|j| j < art_from) {
        // improving ray: unit increase of the entering variable
        let mut ray = vec![0i128; n];
        if s < n {
            ray[s] = 1;
        }
        for r in 0..m {
            if t.basis[r] < n {
                ray[t.basis[r]] = -t.rows[r][s];
            }
        }
        let desc: Vec<String> = ray
            .iter()
            .enumerate()
            .filter(|(_, d)| **d != 0)
            .map(|(i, d)| format!("{d:+}*x{i}"))
            .collect();
        return Err(Error::Unbounded {
            ray: desc.join(" "),
        });
    }

    // read off the vertex
    let mut y = vec![0i128; n];
    for r in 0..m {
        if t.basis[r] < n {
            y[t.basis[r]] = t.rows[r][n_total];
        }
    }
    let z: Vec<i128> = y.iter().zip(&lower_int).map(|(yi, li)| yi + li).collect();
    let witness: Vec<Rational> = z
        .iter()
        .map(|&zi| Rational::new(BigInt::from(zi), scale.clone()))
        .collect();
    let value: Rational = lp
        .cost
        .iter()
        .zip(&witness)
        .map(|(c, x)| c * x)
        .sum();

    let integral_witness = if scale.is_one() {
        let ints: Option<Vec<i64>> = z.iter().map(|&zi| i64::try_from(zi).ok()).collect();
        let ints = ints.ok_or(Error::LpDataTooLarge)?;
        Some(ints)
    } else {
        None
    };

    Ok(LpSolution {
        value,
        witness,
        integral_witness,
    })
}

/// Exact feasibility check; the violation list names every failed constraint.
pub fn verify_feasible(lp: &LinearProgramme, x: &[Rational]) -> (bool, Vec<String>) {
    assert_eq!(x.len(), lp.var_count, "dimension mismatch");
    let mut violations = Vec::new();
    for i in 0..lp.var_count {
        if let Some(l) = &lp.lower[i] {
            if &x[i] < l {
                violations.push(format!("x{i} = {} below lower bound {l}", x[i]));
            }
        }
        if let Some(u) = &lp.upper[i] {
            if &x[i] > u {
                violations.push(format!("x{i} = {} above upper bound {u}", x[i]));
            }
        }
    }
    for e in &lp.diff_edges {
        let d = &x[e.i] - &x[e.j];
        if d.abs() > e.bound {
            violations.push(format!(
                "|x{} - x{}| = {} exceeds {}",
                e.i,
                e.j,
                d.abs(),
                e.bound
            ));
        }
    }
    (violations.is_empty(), violations)
}

/// Exhaustive integral enumeration over explicit per-variable ranges,
/// filtered by feasibility; the independent oracle for [`solve_lp`].
pub fn brute_force_box(
    lp: &LinearProgramme,
    ranges: &[(i64, i64)],
    budget: u128,
) -> Result<LpSolution> {
    validate(lp)?;
    assert_eq!(ranges.len(), lp.var_count, "dimension mismatch");
    let n = lp.var_count;

    let mut assignments: u128 = 1;
    for &(lo, hi) in ranges {
        if hi < lo {
            return Err(Error::Infeasible {
                constraint: format!("empty enumeration range [{lo}, {hi}]"),
            });
        }
        assignments = assignments.saturating_mul((hi - lo + 1) as u128);
        if assignments > budget {
            return Err(Error::TooLargeForBruteForce {
                assignments,
                budget,
            });
        }
    }

    // integer-effective bounds: for integral x, x >= l iff x >= ceil(l)
    let mut lo_eff = vec![i64::MIN; n];
    let mut hi_eff = vec![i64::MAX; n];
    for i in 0..n {
        lo_eff[i] = ranges[i].0;
        hi_eff[i] = ranges[i].1;
        if let Some(l) = &lp.lower[i] {
            let c = l.ceil().to_integer().to_i64().ok_or(Error::LpDataTooLarge)?;
            lo_eff[i] = lo_eff[i].max(c);
        }
        if let Some(u) = &lp.upper[i] {
            let f = u.floor().to_integer().to_i64().ok_or(Error::LpDataTooLarge)?;
            hi_eff[i] = hi_eff[i].min(f);
        }
    }
    let diff_int: Vec<(usize, usize, i64)> = lp
        .diff_edges
        .iter()
        .map(|e| {
            let b = e
                .bound
                .floor()
                .to_integer()
                .to_i64()
                .ok_or(Error::LpDataTooLarge)?;
            Ok((e.i, e.j, b))
        })
        .collect::<Result<_>>()?;

    let cost_scale = lcm_of_denominators(lp.cost.iter());
    let cost_scale_rat = Rational::from(cost_scale.clone());
    let cost_int: Vec<i128> = lp
        .cost
        .iter()
        .map(|c| to_i128((c * &cost_scale_rat).numer()))
        .collect::<Result<_>>()?;

    if (0..n).any(|i| lo_eff[i] > hi_eff[i]) {
        return Err(Error::Infeasible {
            constraint: "no integral point inside the boxes".into(),
        });
    }

    let mut current: Vec<i64> = lo_eff.clone();
    let mut best: Option<(i128, Vec<i64>)> = None;
    'outer: loop {
        let feasible = diff_int
            .iter()
            .all(|&(i, j, b)| (current[i] - current[j]).abs() <= b);
        if feasible {
            let value: i128 = cost_int
                .iter()
                .zip(&current)
                .map(|(c, &x)| c * x as i128)
                .sum();
            let improves = best.as_ref().map_or(true, |(bv, _)| value > *bv);
            if improves {
                best = Some((value, current.clone()));
            }
        }
        // odometer increment
        for i in (0..n).rev() {
            if current[i] < hi_eff[i] {
                current[i] += 1;
                continue 'outer;
            }
            current[i] = lo_eff[i];
        }
        break;
    }

    match best {
        None => Err(Error::Infeasible {
            constraint: "no feasible point in the enumeration ranges".into(),
        }),
        Some((value_int, ints)) => {
            let value = Rational::new(BigInt::from(value_int), cost_scale);
            let witness: Vec<Rational> = ints
                .iter()
                .map(|&x| Rational::from(BigInt::from(x)))
                .collect();
            Ok(LpSolution {
                value,
                witness,
                integral_witness: Some(ints),
            })
        }
    }
}
