#include "coefficients.hpp"

namespace zetalab {

std::vector<cplx> CoefficientSource::local_roots(std::uint64_t) const {
  fail(ErrorCode::domain, "source '" + label() + "' has no polynomial Euler product");
}

cplx CoefficientSource::value(std::uint64_t n) const {
  if (n == 0) fail(ErrorCode::domain, "f(0) undefined");
  if (n > max_n()) fail(ErrorCode::capacity, "source '" + label() + "' has no values beyond " + std::to_string(max_n()));
  cplx out{1.0, 0.0};
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int h = 0;
      while (n % p == 0) {
        n /= p;
        ++h;
      }
      out *= prime_power(p, h);
    }
  }
  if (n > 1) out *= prime_power(n, 1);
  return out;
}

cplx CoefficientSource::value_factored(const std::vector<std::pair<std::uint64_t, int>>& factorization) const {
  cplx out{1.0, 0.0};
  for (auto [p, h] : factorization) out *= prime_power(p, h);
  return out;
}

namespace {

class UnitSource final : public CoefficientSource {
 public:
  UnitSource() : CoefficientSource("unit", 1, true), one_(1, 1, std::vector<int>{0}, true) {}
  cplx prime_power(std::uint64_t, int) const override { return {1.0, 0.0}; }
  std::vector<cplx> local_roots(std::uint64_t) const override { return {cplx(1.0, 0.0)}; }
  const DirichletCharacter* periodic_character() const override { return &one_; }

 private:
  DirichletCharacter one_;
};

class MobiusSource final : public CoefficientSource {
 public:
  MobiusSource() : CoefficientSource("mobius", 0, true) {}
  cplx prime_power(std::uint64_t, int h) const override { return h == 1 ? cplx(-1.0, 0.0) : cplx(0.0, 0.0); }
};

class CharacterSource final : public CoefficientSource {
 public:
  CharacterSource(long long q, int h)
      : CoefficientSource("character:" + std::to_string(q) + ":" + std::to_string(h), 1, true),
        family_(std::make_shared<CharacterFamily>(q)),
        h_(h) {
    if (h < 0 || h >= family_->size()) fail(ErrorCode::domain, "character index out of range");
  }
  cplx prime_power(std::uint64_t p, int h) const override {
    cplx c = family_->chi(h_).value(p);
    cplx out{1.0, 0.0};
    for (int i = 0; i < h; ++i) out *= c;
    return out;
  }
  std::vector<cplx> local_roots(std::uint64_t p) const override { return {family_->chi(h_).value(p)}; }
  const DirichletCharacter* periodic_character() const override { return &family_->chi(h_); }

 private:
  std::shared_ptr<const CharacterFamily> family_;
  int h_;
};

class TauSource final : public CoefficientSource {
 public:
  explicit TauSource(int table_n)
      : CoefficientSource(table_n == 10000 ? "tau" : "tau:" + std::to_string(table_n), 2, false) {
    auto tau = ramanujan_tau(table_n);
    fp_.assign(tau.size() + 1, 0.0);
    for (std::size_t n = 1; n <= tau.size(); ++n) {
      // tau fits long double far below its 64-bit exponent range here
      fp_[n] = static_cast<double>(static_cast<long double>(tau[n - 1]) /
                                   std::pow(static_cast<long double>(n), 5.5L));
    }
    for (std::uint64_t p = 2; p < fp_.size(); ++p) {
      if (!is_prime_u64(p)) continue;
      if (std::abs(fp_[p]) > 2.0 + 1e-9)
        fail(ErrorCode::internal, "normalized tau exceeds 2 at p=" + std::to_string(p));
    }
  }
  std::uint64_t max_n() const override { return fp_.size() - 1; }
  cplx prime_power(std::uint64_t p, int h) const override {
    if (p >= fp_.size()) fail(ErrorCode::capacity, "tau table too small for p=" + std::to_string(p));
    // trace recursion for degree 2 with unit-circle roots: c_h = f(p) c_{h-1} - c_{h-2}
    double fp = fp_[p];
    double prev = 1.0, cur = fp;
    if (h == 0) return {1.0, 0.0};
    for (int i = 1; i < h; ++i) {
      double next = fp * cur - prev;
      prev = cur;
      cur = next;
    }
    return {cur, 0.0};
  }
  std::vector<cplx> local_roots(std::uint64_t p) const override {
    if (p >= fp_.size()) fail(ErrorCode::capacity, "tau table too small for p=" + std::to_string(p));
    double fp = fp_[p];
    double disc = 4.0 - fp * fp;
    if (disc < 0) disc = 0;  // |f(p)| <= 2 verified at construction
    double half = 0.5 * std::sqrt(disc);
    return {cplx(fp / 2.0, half), cplx(fp / 2.0, -half)};
  }

 private:
  std::vector<double> fp_;  // f(p) = tau(p) p^{-11/2}, indexed by n (primes used)
};

class ScaledSource final : public CoefficientSource {
 public:
  ScaledSource(double c, SourcePtr base)
      : CoefficientSource(format_double(c) + "*" + base->label(), base->degree(), false),
        c_(c),
        base_(std::move(base)) {}
  std::uint64_t max_n() const override { return base_->max_n(); }
  cplx prime_power(std::uint64_t p, int h) const override { return (h == 0 ? cplx(1.0, 0.0) : cplx(c_, 0.0) * base_->prime_power(p, h)); }

 private:
  double c_;
  SourcePtr base_;
};

}  // namespace

SourcePtr unit_source() {
  static SourcePtr s = std::make_shared<UnitSource>();
  return s;
}

SourcePtr mobius_source() {
  static SourcePtr s = std::make_shared<MobiusSource>();
  return s;
}

SourcePtr character_source(long long q, int h) { return std::make_shared<CharacterSource>(q, h); }

SourcePtr tau_source(int table_n) { return std::make_shared<TauSource>(table_n); }

SourcePtr scaled_source(double c, SourcePtr base) { return std::make_shared<ScaledSource>(c, std::move(base)); }

SourcePtr make_source(const std::string& label) {
  if (label == "unit") return unit_source();
  if (label == "mobius") return mobius_source();
  if (label == "tau") return tau_source();
  if (label.rfind("tau:", 0) == 0) return tau_source(std::stoi(label.substr(4)));
  if (label.rfind("character:", 0) == 0) {
    auto rest = label.substr(10);
    auto colon = rest.find(':');
    if (colon == std::string::npos) fail(ErrorCode::usage, "character source needs q and h: character:q:h");
    return character_source(std::stoll(rest.substr(0, colon)), std::stoi(rest.substr(colon + 1)));
  }
  fail(ErrorCode::usage, "unknown coefficient source '" + label + "'");
}

}  // namespace zetalab
