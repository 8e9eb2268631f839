#pragma once

#include <memory>

#include "characters.hpp"
#include "support.hpp"

namespace zetalab {

// A multiplicative arithmetic function given at prime powers, together with
// its local roots: f restricted to powers of p is the coefficient sequence
// of prod_j (1 - f_j(p) X)^{-1}, deg d, |f_j(p)| <= 1.
class CoefficientSource {
 public:
  virtual ~CoefficientSource() = default;

  const std::string& label() const { return label_; }
  int degree() const { return degree_; }
  // true when the source carries the polynomial-Euler-product structure
  // (local roots available); the Moebius stress source does not.
  bool has_local_roots() const { return degree_ > 0; }
  // |f(n)| <= 1 for all n; enables rigorous summation tails.
  bool unimodular_bounded() const { return unimodular_; }
  // largest n for which values are available (tau is table-backed)
  virtual std::uint64_t max_n() const { return ~0ull; }

  virtual cplx prime_power(std::uint64_t p, int h) const = 0;
  virtual std::vector<cplx> local_roots(std::uint64_t p) const;
  // non-null when f itself is a Dirichlet character (unit = principal mod 1);
  // periodicity enables sharper rigorous tails and table-driven summation
  virtual const DirichletCharacter* periodic_character() const { return nullptr; }

  cplx value(std::uint64_t n) const;  // multiplicative assembly via factorization
  cplx value_factored(const std::vector<std::pair<std::uint64_t, int>>& factorization) const;

 protected:
  CoefficientSource(std::string label, int degree, bool unimodular)
      : label_(std::move(label)), degree_(degree), unimodular_(unimodular) {}

 private:
  std::string label_;
  int degree_;
  bool unimodular_;
};

using SourcePtr = std::shared_ptr<const CoefficientSource>;

SourcePtr unit_source();
SourcePtr mobius_source();
// completely multiplicative chi_h mod q (the paper-indexed family character)
SourcePtr character_source(long long q, int h);
// f(n) = tau(n) n^{-11/2}; tau table up to table_n (Deligne bound is checked
// at construction for the primes in the table, not assumed)
SourcePtr tau_source(int table_n = 10000);
// c * base, for constructing class-membership counterexamples
SourcePtr scaled_source(double c, SourcePtr base);

// Labels: "unit", "tau", "tau:N", "character:q:h", "mobius".
SourcePtr make_source(const std::string& label);

}  // namespace zetalab
