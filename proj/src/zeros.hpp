#pragma once

#include "series.hpp"

namespace zetalab {

using Evaluator = std::function<cplx(cplx)>;

struct Rectangle {
  double sigma1 = 0, sigma2 = 0, t1 = 0, t2 = 0;

  Rectangle() = default;
  Rectangle(double s1, double s2, double u1, double u2) : sigma1(s1), sigma2(s2), t1(u1), t2(u2) {
    if (!(sigma1 < sigma2 && t1 < t2)) fail(ErrorCode::usage, "rectangle needs sigma1 < sigma2 and t1 < t2");
  }
  double width() const { return sigma2 - sigma1; }
  double height() const { return t2 - t1; }
};

struct StepControl {
  int initial_per_edge = 32;
  long long max_boundary_points = 1ll << 20;
  double zero_guard = 1e-8;      // |F| below this on the boundary trips a boundary error
  std::uint64_t seed = 12345;    // drives deterministic boundary perturbations
};

// Total argument variation around the rectangle divided by 2 pi. Adaptive
// bisection keeps every step's argument change below pi/2; a boundary
// sample with |F| < zero_guard raises a guard error (callers perturb).
int winding_number(const Evaluator& f, const Rectangle& rect, const StepControl& ctl = {});
int winding_circle(const Evaluator& f, cplx center, double radius, const StepControl& ctl = {});

struct FoundZero {
  cplx s;
  double abs_f = 0;
  double radius = 0;  // certification circle radius (winding 1 verified)
};

struct ZeroReport {
  int winding = 0;  // of the original rectangle
  std::vector<FoundZero> zeros;
  long long evaluations = 0;
  std::vector<std::string> flagged;  // cells where refinement or certification failed
  bool count_consistent() const { return flagged.empty() && static_cast<int>(zeros.size()) == winding; }
};

// Recursive subdivision until each cell has winding <= 1, then Newton
// refinement from the cell center down to |F| < tol, then certification by
// winding 1 on a small circle.
ZeroReport find_zeros(const Evaluator& f, const Rectangle& rect, double tol, const StepControl& ctl = {});

struct SigmaStarEstimate {
  std::string status;  // "zero-found" | "none-found"
  double lower_bound = 0;  // sup of real parts of certified zeros; only meaningful when found
  std::vector<FoundZero> zeros;
  Rectangle box;
  long long evaluations = 0;
};

// Scans [sigma_lo, sigma_hi] x [0, t_max] for zeros, working down from the
// high-sigma side in bands; stops early once lower bands cannot improve the
// bound. Reports a certified lower bound for sigma*, never an infimum.
SigmaStarEstimate sigma_star_estimate(const Evaluator& f, double sigma_lo, double sigma_hi, double t_max,
                                      long long eval_budget, const StepControl& ctl = {});

// Evaluator for F(lambda, m, k, s). Rational lambda with the unit source
// routes through Hurwitz regroupings (cheap, valid beyond sigma > 1);
// otherwise direct summation with the given eps/budget.
Evaluator twist_evaluator(SourcePtr f, const TwistSpec& twist, double eps, const EvalBudget& budget = {});

struct ContinuityRow {
  std::string x_n;
  long long denominator = 0;
  SigmaStarEstimate estimate;
};

// sigma* estimates along the convergents of lambda (and, when lambda is
// irrational and affordable, at lambda itself).
std::vector<ContinuityRow> continuity_experiment(SourcePtr f, const Lambda& lambda, int convergent_count,
                                                 double sigma_lo, double sigma_hi, double t_max,
                                                 long long per_point_budget);

struct SymmetryReport {
  double max_deviation = 0;
  int samples = 0;
};

// F(1-lambda, m, k, conj s) = conj F(lambda, m, k, s) for real-valued f,
// evaluated at matched truncations.
SymmetryReport symmetry_check(SourcePtr f, const TwistSpec& twist, const std::vector<cplx>& samples,
                              long long terms = 200000);

}  // namespace zetalab
