#pragma once

#include <unordered_map>

#include "coefficients.hpp"

namespace zetalab {

// (lambda, m, k): coefficients restricted to n = m (mod k), phase e(lambda n)
struct TwistSpec {
  Lambda lambda;
  long long m = 1;
  long long k = 1;

  TwistSpec(Lambda l, long long m_, long long k_);
};

struct EvalResult {
  cplx value{0.0, 0.0};
  long long n_used = 0;
  double tail = 0;      // bound (rigorous) or estimate (heuristic) on the truncation error
  bool rigorous = false;
};

struct EvalBudget {
  long long max_terms = 50'000'000;
  long long forced_n = 0;  // > 0 pins the truncation point exactly
};

// phi(p) = p^{-i t_p}, completely multiplicative. Explicit entries win;
// unlisted primes follow the default rule (t_p = 0, or pi/log p above a
// cutoff when default_pi_over_log is set).
struct PhaseAssignment {
  std::unordered_map<std::uint64_t, double> entries;
  bool default_pi_over_log = false;
  double zero_up_to = 0;  // p <= zero_up_to defaults to t_p = 0

  double t_for(std::uint64_t p) const {
    auto it = entries.find(p);
    if (it != entries.end()) return it->second;
    if (static_cast<double>(p) <= zero_up_to) return 0.0;
    return default_pi_over_log ? PI / std::log(static_cast<double>(p)) : 0.0;
  }
  bool trivial() const { return entries.empty() && !default_pi_over_log; }
};

// F_p(s, chi) = sum_h f(p^h) chi(p)^h p^{-hs} = prod_j (1 - f_j(p) chi(p) p^{-s})^{-1}.
// Both forms are computed and cross-checked when local roots exist.
cplx local_factor(const CoefficientSource& f, std::uint64_t p, const DirichletCharacter* chi, cplx s);

// F(s, chi) = sum f(n) chi(n) n^{-s}, direct summation with compensated
// accumulation. Tail is rigorous for |f| <= 1 sources (Abel summation when
// the product with chi oscillates), heuristic otherwise.
EvalResult series_eval(const CoefficientSource& f, const DirichletCharacter* chi, cplx s, double eps,
                       const EvalBudget& budget = {});

// F(lambda, m, k, s) = sum_{n = m (k)} f(n) e(lambda n) n^{-s}
EvalResult twisted_eval(const CoefficientSource& f, const TwistSpec& twist, cplx s, double eps,
                        const EvalBudget& budget = {});

// Hurwitz zeta via Euler-Maclaurin; valid for s != 1 including 0 < sigma <= 1.
cplx hurwitz_em(cplx s, double alpha, double eps = 1e-13);

// Lerch series sum_{j>=0} e(lambda j) (j+alpha)^{-s} for rational alpha = num/den.
// Rational lambda routes through Hurwitz regroupings (valid into the strip);
// irrational lambda sums directly with an Abel tail (needs sigma > 1).
cplx lerch_eval(const Lambda& lambda, const Rational& alpha, cplx s, double eps = 1e-12);
// the two constituent paths, exposed for cross-checks
cplx lerch_direct_sum(const Lambda& lambda, double alpha, cplx s, double eps, const EvalBudget& budget = {});
cplx lerch_hurwitz_combination(const Rational& lambda, const Rational& alpha, cplx s, double eps);

// R(s, q) = sum_{n = m (k)} f(n) [e(lambda n) - e(a n / q)] n^{-s};
// identically zero when lambda = a/q.
EvalResult remainder_R(const CoefficientSource& f, const TwistSpec& twist, long long a, long long q, cplx s,
                       double eps, const EvalBudget& budget = {});

// Character decomposition of the twisted series over moduli (k, q):
// character part + principal correction + remainder, reassembled against
// direct evaluation at the same truncation. The assembly is exact per term,
// so the residual measures only arithmetic noise.
struct DecompositionReport {
  cplx character_part{0, 0};
  cplx principal_correction{0, 0};
  cplx principal_correction_product_form{0, 0};  // with the local-factor form of the q-part
  cplx remainder{0, 0};
  cplx reassembled{0, 0};
  cplx direct{0, 0};
  double residual = 0;
  long long n_used = 0;
};
DecompositionReport decompose_twist(const CoefficientSource& f, const TwistSpec& twist, long long a, long long q,
                                    cplx s, double eps, const EvalBudget& budget = {});

// F^phi(lambda, m, k, sigma) = sum_{n = m (k)} f(n) phi(n) e(lambda n) n^{-sigma}
EvalResult phased_eval(const CoefficientSource& f, const TwistSpec& twist, const PhaseAssignment& phases,
                       double sigma, double eps, const EvalBudget& budget = {});

// Streams (n, f(n)) for n in [1, N] via a segmented multiplicative sieve;
// fast paths for unit and character sources.
void for_multiplicative_values(const CoefficientSource& f, std::uint64_t n_max,
                               const std::function<void(std::uint64_t, cplx)>& fn);

}  // namespace zetalab
