#include "series.hpp"

#include <algorithm>
#include <numeric>

namespace zetalab {

namespace {

constexpr double SIGMA_MIN = 0.02;  // direct summation requires sigma >= 1 + SIGMA_MIN

long long gcd_ll(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// n^{-s}
cplx npow(double n, cplx s) {
  double ln = std::log(n);
  return std::polar(std::exp(-s.real() * ln), -s.imag() * ln);
}

double monotone_tail(double sigma, long long k, double n) {
  // sum_{m > n, m = a (k)} m^{-sigma} <= n^{1-sigma}/(k (sigma-1)) + n^{-sigma}
  return std::pow(n, 1.0 - sigma) / (static_cast<double>(k) * (sigma - 1.0)) + std::pow(n, -sigma);
}

double abel_tail(double partial_sum_bound, cplx s, double n) {
  return 2.0 * partial_sum_bound * (1.0 + std::abs(s)) * std::pow(n, -s.real());
}

long long solve_monotone_n(double sigma, long long k, double eps) {
  double n1 = std::pow(static_cast<double>(k) * (sigma - 1.0) * eps * 0.5, 1.0 / (1.0 - sigma));
  double n2 = std::pow(0.5 * eps, -1.0 / sigma);
  double n = std::max({n1, n2, 16.0});
  return n > 9e17 ? 900'000'000'000'000'000ll : static_cast<long long>(n) + 1;
}

long long solve_abel_n(double partial_sum_bound, cplx s, double eps) {
  double n = std::pow(2.0 * partial_sum_bound * (1.0 + std::abs(s)) / eps, 1.0 / s.real());
  n = std::max(n, 16.0);
  return n > 9e17 ? 900'000'000'000'000'000ll : static_cast<long long>(n) + 1;
}

// Pointwise product psi*chi as one periodic character-like object.
struct ProductCharacter {
  const DirichletCharacter* a = nullptr;
  const DirichletCharacter* b = nullptr;
  long long period() const {
    long long pa = a ? a->modulus() : 1;
    long long pb = b ? b->modulus() : 1;
    return pa / gcd_ll(pa, pb) * pb;
  }
  cplx value(std::uint64_t n) const {
    cplx v{1.0, 0.0};
    if (a) v *= a->value(n);
    if (b) v *= b->value(n);
    return v;
  }
  bool principal() const {
    long long p = period();
    for (long long n = 1; n <= p; ++n) {
      if (gcd_ll(n, p) != 1) continue;
      if (std::abs(value(static_cast<std::uint64_t>(n)) - cplx(1.0, 0.0)) > 1e-12) return false;
    }
    return true;
  }
};

}  // namespace

TwistSpec::TwistSpec(Lambda l, long long m_, long long k_) : lambda(std::move(l)), m(m_), k(k_) {
  if (k < 1 || m < 1 || m > k) fail(ErrorCode::usage, "twist residue must satisfy 1 <= m <= k");
  if (gcd_ll(m, k) != 1) fail(ErrorCode::usage, "twist residue must be coprime to the modulus");
}

cplx local_factor(const CoefficientSource& f, std::uint64_t p, const DirichletCharacter* chi, cplx s) {
  double pinv = std::pow(static_cast<double>(p), -s.real());
  if (pinv >= 1.0) fail(ErrorCode::domain, "local factor needs |p^-s| < 1");
  cplx chip = chi ? chi->value(p) : cplx(1.0, 0.0);
  // series form
  cplx ps = npow(static_cast<double>(p), s);
  KahanC series;
  cplx phs{1.0, 0.0};
  for (int h = 0;; ++h) {
    cplx term = f.prime_power(p, h) * phs;
    series.add(term);
    if (h > 2 && std::abs(term) < 1e-18 * (1.0 + std::abs(series.value()))) break;
    if (h > 400) break;
    phs *= chip * ps;
  }
  cplx sum = series.value();
  if (!f.has_local_roots()) return sum;
  cplx prod{1.0, 0.0};
  for (cplx root : f.local_roots(p)) prod *= cplx(1.0, 0.0) - root * chip * ps;
  cplx prod_form = cplx(1.0, 0.0) / prod;
  if (std::abs(prod_form - sum) > 1e-10 * (1.0 + std::abs(prod_form)))
    fail(ErrorCode::internal, "coefficient source inconsistency: series and product local factors disagree at p=" +
                                  std::to_string(p));
  return prod_form;
}

void for_multiplicative_values(const CoefficientSource& f, std::uint64_t n_max,
                               const std::function<void(std::uint64_t, cplx)>& fn) {
  if (n_max > f.max_n()) fail(ErrorCode::capacity, "source '" + f.label() + "' has no values up to " + std::to_string(n_max));
  if (const DirichletCharacter* chi = f.periodic_character()) {
    for (std::uint64_t n = 1; n <= n_max; ++n) fn(n, chi->value(n));
    return;
  }
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n_max))) + 1;
  PrimeSieve small = sieve_primes(std::max<std::uint64_t>(root, 3));
  const std::uint64_t seg = 1u << 18;
  std::vector<cplx> val(seg);
  std::vector<std::uint64_t> rem(seg);
  for (std::uint64_t lo = 1; lo <= n_max; lo += seg) {
    std::uint64_t hi = std::min(n_max, lo + seg - 1);
    std::uint64_t len = hi - lo + 1;
    std::fill(val.begin(), val.begin() + len, cplx(1.0, 0.0));
    for (std::uint64_t i = 0; i < len; ++i) rem[i] = lo + i;
    for (std::uint64_t p : small.primes) {
      if (p * p > hi) break;
      for (std::uint64_t mlt = ((lo + p - 1) / p) * p; mlt <= hi; mlt += p) {
        std::uint64_t i = mlt - lo;
        int h = 0;
        while (rem[i] % p == 0) {
          rem[i] /= p;
          ++h;
        }
        val[i] *= f.prime_power(p, h);
      }
    }
    for (std::uint64_t i = 0; i < len; ++i) {
      cplx v = val[i];
      if (rem[i] > 1) v *= f.prime_power(rem[i], 1);
      if (lo + i >= 1) fn(lo + i, v);
    }
  }
}

EvalResult series_eval(const CoefficientSource& f, const DirichletCharacter* chi, cplx s, double eps,
                       const EvalBudget& budget) {
  double sigma = s.real();
  if (sigma < 1.0 + SIGMA_MIN) fail(ErrorCode::domain, "direct summation needs sigma >= 1.02");

  const DirichletCharacter* fchi = f.periodic_character();
  bool periodic = fchi != nullptr;
  ProductCharacter prod{fchi, chi};

  bool oscillating = periodic && !prod.principal();
  double partial_bound = oscillating ? static_cast<double>(prod.period()) : 0.0;

  long long n_target;
  if (oscillating)
    n_target = solve_abel_n(partial_bound, s, eps);
  else
    n_target = solve_monotone_n(sigma, 1, eps);
  long long n = budget.forced_n > 0 ? budget.forced_n : std::min(n_target, budget.max_terms);
  n = std::min<long long>(n, static_cast<long long>(std::min<std::uint64_t>(f.max_n(), 1ull << 62)));

  KahanC acc;
  double last_block_max = 0;
  long long block_start = n - std::max<long long>(n / 8, 1) + 1;
  if (periodic) {
    for (long long i = 1; i <= n; ++i) {
      cplx c = prod.value(static_cast<std::uint64_t>(i));
      if (c == cplx(0.0, 0.0)) continue;
      cplx term = c * npow(static_cast<double>(i), s);
      acc.add(term);
      if (i >= block_start) last_block_max = std::max(last_block_max, std::abs(term));
    }
  } else {
    for_multiplicative_values(f, static_cast<std::uint64_t>(n), [&](std::uint64_t i, cplx v) {
      if (chi) v *= chi->value(i);
      if (v == cplx(0.0, 0.0)) return;
      cplx term = v * npow(static_cast<double>(i), s);
      acc.add(term);
      if (static_cast<long long>(i) >= block_start) last_block_max = std::max(last_block_max, std::abs(term));
    });
  }

  EvalResult out;
  out.value = acc.value();
  out.n_used = n;
  if (f.unimodular_bounded()) {
    out.rigorous = true;
    out.tail = oscillating ? std::min(abel_tail(partial_bound, s, static_cast<double>(n)),
                                      monotone_tail(sigma, 1, static_cast<double>(n)))
                           : monotone_tail(sigma, 1, static_cast<double>(n));
  } else {
    out.rigorous = false;
    out.tail = 10.0 * last_block_max * static_cast<double>(std::max<long long>(n / 8, 1));
  }
  return out;
}

EvalResult twisted_eval(const CoefficientSource& f, const TwistSpec& twist, cplx s, double eps,
                        const EvalBudget& budget) {
  double sigma = s.real();
  if (sigma < 1.0 + SIGMA_MIN) fail(ErrorCode::domain, "direct summation needs sigma >= 1.02");
  long long k = twist.k, m = twist.m;

  Lambda step_phase = twist.lambda.times_mod1(static_cast<std::uint64_t>(k));
  double osc_norm = step_phase.integral() ? 0.0 : step_phase.norm_times(1);
  bool oscillating = osc_norm > 1e-12;
  double partial_bound = oscillating ? 1.0 / (2.0 * osc_norm) : 0.0;

  long long n_target;
  if (oscillating)
    n_target = solve_abel_n(partial_bound, s, eps);
  else
    n_target = solve_monotone_n(sigma, k, eps);
  long long n = budget.forced_n > 0 ? budget.forced_n : std::min(n_target, budget.max_terms * k);
  n = std::min<long long>(n, static_cast<long long>(std::min<std::uint64_t>(f.max_n(), 1ull << 62)));
  n = std::max(n, m);

  const DirichletCharacter* fchi = f.periodic_character();

  KahanC acc;
  double last_block_max = 0;
  long long block_start = n - std::max<long long>(n / 8, 1) + 1;
  auto add_term = [&](std::uint64_t i, cplx coeff) {
    if (coeff == cplx(0.0, 0.0)) return;
    cplx term = coeff * twist.lambda.phase_times(i) * npow(static_cast<double>(i), s);
    acc.add(term);
    if (static_cast<long long>(i) >= block_start) last_block_max = std::max(last_block_max, std::abs(term));
  };

  if (fchi) {
    for (long long i = m; i <= n; i += k) add_term(static_cast<std::uint64_t>(i), fchi->value(static_cast<std::uint64_t>(i)));
  } else {
    for_multiplicative_values(f, static_cast<std::uint64_t>(n), [&](std::uint64_t i, cplx v) {
      if (static_cast<long long>(i % static_cast<std::uint64_t>(k)) == m % k) add_term(i, v);
    });
  }

  EvalResult out;
  out.value = acc.value();
  out.n_used = n;
  if (f.unimodular_bounded()) {
    out.rigorous = true;
    out.tail = oscillating ? std::min(abel_tail(partial_bound, s, static_cast<double>(n)),
                                      monotone_tail(sigma, k, static_cast<double>(n)))
                           : monotone_tail(sigma, k, static_cast<double>(n));
  } else {
    out.rigorous = false;
    out.tail = 10.0 * last_block_max * static_cast<double>(std::max<long long>(n / (8 * k), 1));
  }
  return out;
}

// --------------------------------------------------------------------------
// Hurwitz zeta, Euler-Maclaurin
// --------------------------------------------------------------------------

namespace {

// B_{2k}/(2k)! for k = 1..18
const double BERN_FACT[] = {
    8.3333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783069e-05,  -8.2671957671957672e-07,
    2.0876756987868099e-08,  -5.2841901386874932e-10, 1.3382536530684679e-11,  -3.3896802963225829e-13,
    8.5860620562778446e-15,  -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812523e-19,
    3.5347070396294675e-21,  -8.9535174270375469e-23, 2.2679524523376831e-24,  -5.7447906688722024e-26,
    1.4551724756148649e-27,  -3.6859949406653102e-29,
};

}  // namespace

cplx hurwitz_em(cplx s, double alpha, double eps) {
  if (!(alpha > 0.0) || alpha > 1.0 + 1e-15) fail(ErrorCode::domain, "hurwitz_em needs alpha in (0, 1]");
  if (std::abs(s - cplx(1.0, 0.0)) < 1e-12) fail(ErrorCode::domain, "hurwitz zeta pole at s = 1");
  double sigma = s.real();
  if (sigma <= 0.0) fail(ErrorCode::domain, "hurwitz_em covers sigma > 0");
  eps = std::max(eps, 1e-15);

  // shift until the first omitted correction term is safely below eps
  const int terms = 18;
  long long n = static_cast<long long>(std::max({16.0, std::abs(s.imag()) * 0.6, std::abs(s) * 0.1}));
  for (;; n *= 2) {
    if (n > (1ll << 40)) fail(ErrorCode::capacity, "hurwitz_em shift exploded");
    double base = static_cast<double>(n) + alpha;
    double fac = std::pow(base, -sigma);
    for (int j = 0; j < 2 * terms; ++j) fac *= (std::abs(s) + j) / base;
    double rem = std::abs(BERN_FACT[terms - 1]) * fac * base * base;
    if (rem < eps * 0.5) break;
  }

  KahanC head;
  for (long long i = 0; i < n; ++i) head.add(npow(static_cast<double>(i) + alpha, s));
  double base = static_cast<double>(n) + alpha;
  cplx tail = npow(base, s - cplx(1.0, 0.0)) / (s - cplx(1.0, 0.0));
  tail += 0.5 * npow(base, s);
  cplx poch = s;                       // rising product s (s+1) ...
  cplx power = npow(base, s) / base;   // (N+alpha)^{-s-1}
  for (int r = 1; r <= terms; ++r) {
    tail += BERN_FACT[r - 1] * poch * power;
    poch *= (s + cplx(static_cast<double>(2 * r - 1), 0.0)) * (s + cplx(static_cast<double>(2 * r), 0.0));
    power /= base * base;
  }
  return head.value() + tail;
}

// --------------------------------------------------------------------------
// Lerch
// --------------------------------------------------------------------------

cplx lerch_direct_sum(const Lambda& lambda, double alpha, cplx s, double eps, const EvalBudget& budget) {
  double sigma = s.real();
  if (sigma < 1.0 + SIGMA_MIN) fail(ErrorCode::domain, "direct Lerch summation needs sigma >= 1.02");
  double osc = lambda.integral() ? 0.0 : lambda.norm_times(1);
  long long n;
  if (osc > 1e-12)
    n = solve_abel_n(1.0 / (2.0 * osc), s, eps);
  else
    n = solve_monotone_n(sigma, 1, eps);
  if (budget.forced_n > 0) n = budget.forced_n;
  n = std::min(n, budget.max_terms);
  KahanC acc;
  for (long long j = 0; j < n; ++j)
    acc.add(lambda.phase_times(static_cast<std::uint64_t>(j)) * npow(static_cast<double>(j) + alpha, s));
  return acc.value();
}

cplx lerch_hurwitz_combination(const Rational& lambda, const Rational& alpha, cplx s, double eps) {
  long long q = lambda.den;
  long long a = lambda.num % q;
  KahanC acc;
  for (long long r = 0; r < q; ++r) {
    double shifted = (static_cast<double>(r) + alpha.to_double()) / static_cast<double>(q);
    cplx phase = unit_phase(static_cast<double>((a * r) % q) / static_cast<double>(q));
    acc.add(phase * hurwitz_em(s, shifted, eps / static_cast<double>(q)));
  }
  return npow(static_cast<double>(q), s) * acc.value();
}

cplx lerch_eval(const Lambda& lambda, const Rational& alpha, cplx s, double eps) {
  if (!(alpha.num > 0 && alpha.num <= alpha.den)) fail(ErrorCode::domain, "lerch_eval needs alpha in (0, 1]");
  if (lambda.is_rational()) {
    cplx via_hurwitz = lerch_hurwitz_combination(lambda.rational(), alpha, s, eps);
    // cross-check against the direct sum when the direct path is affordable
    double osc = lambda.integral() ? 0.0 : lambda.norm_times(1);
    if (osc > 1e-12 && s.real() >= 1.0 + SIGMA_MIN) {
      long long n_direct = solve_abel_n(1.0 / (2.0 * osc), s, eps);
      if (n_direct <= 2'000'000) {
        cplx direct = lerch_direct_sum(lambda, alpha.to_double(), s, eps);
        double tol = std::max(8.0 * eps, 1e-9 * (1.0 + std::abs(via_hurwitz)));
        if (std::abs(direct - via_hurwitz) > tol)
          fail(ErrorCode::internal, "lerch evaluation paths disagree beyond tolerance");
      }
    }
    return via_hurwitz;
  }
  return lerch_direct_sum(lambda, alpha.to_double(), s, eps);
}

// --------------------------------------------------------------------------
// Remainder and decomposition
// --------------------------------------------------------------------------

EvalResult remainder_R(const CoefficientSource& f, const TwistSpec& twist, long long a, long long q, cplx s,
                       double eps, const EvalBudget& budget) {
  if (twist.lambda.is_rational()) {
    const Rational& r = twist.lambda.rational();
    Rational target(a % q == 0 ? q : a % q, q);
    if (r == target) return {cplx(0.0, 0.0), 0, 0.0, true};
  }
  double sigma = s.real();
  if (sigma < 1.0 + SIGMA_MIN) fail(ErrorCode::domain, "direct summation needs sigma >= 1.02");
  long long k = twist.k, m = twist.m;
  long long n = budget.forced_n > 0 ? budget.forced_n : std::min(solve_monotone_n(sigma, k, eps / 2.0), budget.max_terms * k);
  n = std::min<long long>(n, static_cast<long long>(std::min<std::uint64_t>(f.max_n(), 1ull << 62)));

  Lambda aq = Lambda::from_rational(a % q == 0 ? q : a % q, q);
  const DirichletCharacter* fchi = f.periodic_character();
  KahanC acc;
  auto add_term = [&](std::uint64_t i, cplx coeff) {
    if (coeff == cplx(0.0, 0.0)) return;
    cplx delta = twist.lambda.phase_times(i) - aq.phase_times(i);
    acc.add(coeff * delta * npow(static_cast<double>(i), s));
  };
  if (fchi) {
    for (long long i = m; i <= n; i += k) add_term(static_cast<std::uint64_t>(i), fchi->value(static_cast<std::uint64_t>(i)));
  } else {
    for_multiplicative_values(f, static_cast<std::uint64_t>(n), [&](std::uint64_t i, cplx v) {
      if (static_cast<long long>(i % static_cast<std::uint64_t>(k)) == m % k) add_term(i, v);
    });
  }
  EvalResult out;
  out.value = acc.value();
  out.n_used = n;
  out.rigorous = f.unimodular_bounded();
  out.tail = 2.0 * monotone_tail(sigma, k, static_cast<double>(n));
  return out;
}

DecompositionReport decompose_twist(const CoefficientSource& f, const TwistSpec& twist, long long a, long long q,
                                    cplx s, double eps, const EvalBudget& budget) {
  long long k = twist.k, m = twist.m;
  if (q < 3 || !is_prime_u64(static_cast<std::uint64_t>(q))) fail(ErrorCode::domain, "decomposition needs an odd prime q");
  if (gcd_ll(a, q) != 1) fail(ErrorCode::usage, "decomposition needs gcd(a, q) = 1");
  if (gcd_ll(k, q) != 1) fail(ErrorCode::domain, "decomposition needs gcd(k, q) = 1");
  double sigma = s.real();
  if (sigma < 1.0 + SIGMA_MIN) fail(ErrorCode::domain, "direct summation needs sigma >= 1.02");

  long long n = budget.forced_n > 0 ? budget.forced_n : std::min(solve_monotone_n(sigma, 1, eps), budget.max_terms);
  n = std::min<long long>(n, static_cast<long long>(std::min<std::uint64_t>(f.max_n(), 1ull << 62)));

  auto psis = small_modulus_family(k);
  CharacterFamily chis(q);
  long long kq = k * q;
  long long phi_kq = static_cast<long long>(euler_phi(static_cast<std::uint64_t>(kq)));

  // one pass: per-residue partial sums mod kq, the direct twisted sum, and R
  std::vector<KahanC> class_sums(static_cast<std::size_t>(kq));
  KahanC direct, remainder;
  Lambda aq = Lambda::from_rational(a % q == 0 ? q : a % q, q);
  bool lambda_is_aq = twist.lambda.is_rational() && twist.lambda.rational() == aq.rational();
  auto visit = [&](std::uint64_t i, cplx v) {
    if (v == cplx(0.0, 0.0)) return;
    cplx pw = npow(static_cast<double>(i), s);
    class_sums[static_cast<std::size_t>(i % static_cast<std::uint64_t>(kq))].add(v * pw);
    if (static_cast<long long>(i % static_cast<std::uint64_t>(k)) == m % k) {
      cplx lam = twist.lambda.phase_times(i);
      direct.add(v * lam * pw);
      if (!lambda_is_aq) remainder.add(v * (lam - aq.phase_times(i)) * pw);
    }
  };
  const DirichletCharacter* fchi = f.periodic_character();
  if (fchi) {
    for (long long i = 1; i <= n; ++i) visit(static_cast<std::uint64_t>(i), fchi->value(static_cast<std::uint64_t>(i)));
  } else {
    for_multiplicative_values(f, static_cast<std::uint64_t>(n), visit);
  }

  auto char_sum = [&](const DirichletCharacter& psi, const DirichletCharacter* chi) {
    KahanC acc;
    for (long long b = 0; b < kq; ++b) {
      cplx c = psi.value(static_cast<std::uint64_t>(b));
      if (chi) c *= chi->value(static_cast<std::uint64_t>(b));
      if (c != cplx(0.0, 0.0)) acc.add(c * class_sums[static_cast<std::size_t>(b)].value());
    }
    return acc.value();
  };

  DecompositionReport rep;
  rep.n_used = n;
  double inv_phi = 1.0 / static_cast<double>(phi_kq);
  KahanC character_part, principal, principal_product;
  for (const auto& psi : psis) {
    cplx psim = std::conj(psi.value(static_cast<std::uint64_t>(m)));
    for (int j = 1; j <= q - 2; ++j)
      character_part.add(psim * chis.chi(j).value(static_cast<std::uint64_t>(a)) * chis.gauss_conj(j) *
                         char_sum(psi, &chis.chi(j)));
    cplx f_chi0 = char_sum(psi, &chis.chi(0));
    cplx f_psi = char_sum(psi, nullptr);
    // exact truncated form of -(1/phi(kq)) [1 - phi(q)(F_q - 1)] F(s, psi chi0)
    principal.add(-psim * (static_cast<double>(q) * f_chi0 - static_cast<double>(q - 1) * f_psi));
    cplx fq = local_factor(f, static_cast<std::uint64_t>(q), nullptr, s);
    principal_product.add(-psim * (cplx(1.0, 0.0) - static_cast<double>(q - 1) * (fq - cplx(1.0, 0.0))) * f_chi0);
  }
  rep.character_part = inv_phi * character_part.value();
  rep.principal_correction = inv_phi * principal.value();
  rep.principal_correction_product_form = inv_phi * principal_product.value();
  rep.remainder = remainder.value();
  rep.reassembled = rep.character_part + rep.principal_correction + rep.remainder;
  rep.direct = direct.value();
  rep.residual = std::abs(rep.reassembled - rep.direct);
  if (rep.residual > std::max(eps, 1e-8) * (1.0 + std::abs(rep.direct)))
    fail(ErrorCode::internal, "decomposition failed to reassemble the twisted series");
  return rep;
}

EvalResult phased_eval(const CoefficientSource& f, const TwistSpec& twist, const PhaseAssignment& phases,
                       double sigma, double eps, const EvalBudget& budget) {
  if (sigma < 1.0 + 1e-9) fail(ErrorCode::domain, "phased evaluation needs sigma > 1");
  long long k = twist.k, m = twist.m;
  long long n = budget.forced_n > 0
                    ? budget.forced_n
                    : std::min(solve_monotone_n(std::max(sigma, 1.0 + SIGMA_MIN), k, eps), budget.max_terms * k);
  n = std::min<long long>(n, static_cast<long long>(std::min<std::uint64_t>(f.max_n(), 1ull << 62)));
  n = std::max(n, m);

  if (phases.trivial()) {
    EvalBudget b2 = budget;
    b2.forced_n = n;
    return twisted_eval(f, twist, cplx(sigma, 0.0), eps, b2);
  }

  // theta[n] = sum_{p^h || n} h t_p log p, built additively over prime
  // powers; phi(n) = e^{-i theta[n]}
  std::vector<double> theta(static_cast<std::size_t>(n) + 1, 0.0);
  for_primes_in(1, static_cast<std::uint64_t>(n), [&](std::uint64_t p) {
    double tp = phases.t_for(p);
    if (tp == 0.0) return true;
    double tl = tp * std::log(static_cast<double>(p));
    for (u128 pw = p; pw <= static_cast<u128>(n); pw *= p)
      for (std::uint64_t mult = static_cast<std::uint64_t>(pw); mult <= static_cast<std::uint64_t>(n);
           mult += static_cast<std::uint64_t>(pw))
        theta[mult] += tl;
    return true;
  });

  KahanC acc;
  auto add_term = [&](std::uint64_t i, cplx coeff) {
    if (coeff == cplx(0.0, 0.0)) return;
    double ln = std::log(static_cast<double>(i));
    double angle = TWO_PI * twist.lambda.frac_times(i) - theta[i];
    acc.add(coeff * std::polar(std::exp(-sigma * ln), angle));
  };
  const DirichletCharacter* fchi = f.periodic_character();
  if (fchi) {
    for (long long i = m; i <= n; i += k) add_term(static_cast<std::uint64_t>(i), fchi->value(static_cast<std::uint64_t>(i)));
  } else {
    for_multiplicative_values(f, static_cast<std::uint64_t>(n), [&](std::uint64_t i, cplx v) {
      if (static_cast<long long>(i % static_cast<std::uint64_t>(k)) == m % k) add_term(i, v);
    });
  }
  EvalResult out;
  out.value = acc.value();
  out.n_used = n;
  out.rigorous = f.unimodular_bounded();
  out.tail = monotone_tail(std::max(sigma, 1.0 + 1e-9), k, static_cast<double>(n));
  return out;
}

}  // namespace zetalab
