#pragma once

#include "series.hpp"

namespace zetalab {

struct ExpSumReport {
  double x = 0;
  double y = 0;  // 0 when the sum is not smooth-restricted
  long long r = 0;
  long long s = 0;
  std::string f;
  cplx value{0, 0};
  double bound_rhs = 0;
  double ratio = 0;  // |value| / bound_rhs
};

// S(x, alpha, f) = sum_{n <= x} f(n) e(alpha n); exact-phase summation
cplx exp_sum(const CoefficientSource& f, double x, const Lambda& alpha);

// S(x, y, alpha, f) over y-smooth n <= x
cplx smooth_exp_sum(const CoefficientSource& f, double x, double y, const Lambda& alpha);

struct HarnessGrid {
  std::vector<double> xs{1e3, 1e4, 1e5, 1e6};
  std::vector<long long> moduli{3, 7, 11, 23, 47, 97};
  std::vector<long long> residues{1, 2, 3};
  std::vector<std::string> f_labels{"unit"};
  double eps0 = 2.0 / 3.0;          // admissibility floor: y >= exp((log x)^{eps0})
  double a_exponent = 8.0 / 1.3;    // A: moduli must satisfy r <= (log x)^A
  double y_exponent = 2.0 / 3.0;    // y-rule y = exp((log x)^{y_exponent})

  double y_for(double x) const { return std::exp(std::pow(std::log(x), y_exponent)); }
};

struct HarnessResult {
  std::vector<ExpSumReport> reports;
  std::vector<std::string> rejected;  // grid points outside the admissible window, with reasons
  double max_ratio = 0;
};

// Montgomery-Vaughan bound on full sums at rational alpha = s/r:
// rhs = x/log 2x + x/sqrt(phi(r)) + sqrt(r x) (log(2x/r))^{3/2}, valid for x >= r.
HarnessResult mv_harness(const HarnessGrid& grid);

// Smooth-sum bound at prime r:
// rhs = (sum_{n<=x, P<=y} |f|^2)^{1/2} (Psi(x,y)/sqrt r)^{1/2}
//     + |f(r)| (sum_{n<=x/r, P<=y} |f|^2)^{1/2} Psi(x/r,y)^{1/2}
HarnessResult maier_harness(const HarnessGrid& grid);

// Least-squares fit of Psi(x, e^Q) <= C x^{1 - c/Q}; C is lifted so every
// grid point satisfies the fitted bound.
struct DebruijnFit {
  double c = 0;
  double big_c = 0;
  int points = 0;
  bool all_points_below = false;
};
DebruijnFit debruijn_fit(const std::vector<double>& xs, const std::vector<double>& qs);

// Membership scan for the class of multiplicative f with |f(p)| <= d and
// sum_{n<=x} |f(n)|^2 <= d^2 x; violations are listed, not thrown.
struct FdReport {
  bool member = true;
  double max_prime_ratio = 0;  // max |f(p)|/d
  double max_sum_ratio = 0;    // max over checkpoints of sum / (d^2 x)
  std::vector<std::string> violations;
};
FdReport fd_membership(const CoefficientSource& f, double d, double x_max);

// Measured character sums over primes sum_{p<=x} |f(p)|^2 chi(p) against the
// reference scale x / (phi(q) log^2 x), at decade checkpoints.
struct PrimeCharacterSumDiagnostic {
  long long q = 0;
  int h = 0;
  double x = 0;
  cplx sum{0, 0};
  double reference = 0;
  double ratio = 0;
};
std::vector<PrimeCharacterSumDiagnostic> prime_character_sum_diagnostic(const CoefficientSource& f,
                                                                        const std::vector<long long>& moduli,
                                                                        double x_max);

}  // namespace zetalab
