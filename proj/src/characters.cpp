#include "characters.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace zetalab {

namespace {

long long gcd_ll(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

long long lcm_ll(long long a, long long b) { return a / gcd_ll(a, b) * b; }

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

}  // namespace

DirichletCharacter::DirichletCharacter(long long modulus, long long den, std::vector<int> expo, bool primitive)
    : q_(modulus), den_(den), expo_(std::move(expo)), primitive_(primitive) {
  if (q_ < 1 || den_ < 1 || expo_.size() != static_cast<std::size_t>(q_)) fail(ErrorCode::internal, "bad character table");
}

bool DirichletCharacter::is_principal() const {
  for (int e : expo_)
    if (e > 0) return false;
  return true;
}

bool DirichletCharacter::is_real() const {
  for (int e : expo_)
    if (e > 0 && 2 * e != den_) return false;
  return true;
}

long long DirichletCharacter::order() const {
  long long g = den_;
  for (int e : expo_)
    if (e > 0) g = gcd_ll(g, e);
  return den_ / g;
}

DirichletCharacter DirichletCharacter::conjugate() const {
  std::vector<int> expo(expo_.size());
  for (std::size_t i = 0; i < expo_.size(); ++i)
    expo[i] = expo_[i] <= 0 ? expo_[i] : static_cast<int>(den_ - expo_[i]);
  return DirichletCharacter(q_, den_, std::move(expo), primitive_);
}

cplx gauss_sum(const DirichletCharacter& chi) {
  long long q = chi.modulus();
  if (q == 1) return {1.0, 0.0};
  long long common = lcm_ll(chi.exponent_den(), q);
  if (common <= (1 << 22)) {
    // exact accumulation: count occurrences of each root of unity
    std::vector<long long> counts(static_cast<std::size_t>(common), 0);
    for (long long b = 1; b <= q; ++b) {
      int e = chi.exponent(static_cast<std::uint64_t>(b));
      if (e < 0) continue;
      long long idx = (static_cast<long long>(e) * (common / chi.exponent_den()) + b * (common / q)) % common;
      counts[static_cast<std::size_t>(idx)] += 1;
    }
    KahanC acc;
    for (long long j = 0; j < common; ++j)
      if (counts[static_cast<std::size_t>(j)] != 0)
        acc.add(static_cast<double>(counts[static_cast<std::size_t>(j)]) *
                unit_phase(static_cast<double>(j) / static_cast<double>(common)));
    return acc.value();
  }
  KahanC acc;
  for (long long b = 1; b <= q; ++b) {
    cplx v = chi.value(static_cast<std::uint64_t>(b));
    if (v != cplx(0.0, 0.0)) acc.add(v * unit_phase(static_cast<double>(b) / static_cast<double>(q)));
  }
  return acc.value();
}

CharacterFamily::CharacterFamily(long long q) : q_(q), root_(primitive_root(q)) {
  // primitive_root already rejects q that is not an odd prime
  long long den = q - 1;
  chars_.reserve(static_cast<std::size_t>(q - 1));
  for (long long h = 0; h <= q - 2; ++h) {
    std::vector<int> expo(static_cast<std::size_t>(q), -1);
    long long nu_h = root_.index[static_cast<std::size_t>(h + 1)];
    for (long long n = 1; n < q; ++n) {
      long long nu_n = root_.index[static_cast<std::size_t>(n)];
      expo[static_cast<std::size_t>(n)] = static_cast<int>((nu_h * nu_n) % den);
    }
    chars_.emplace_back(q, den, std::move(expo), h != 0);
  }
  gauss_.reserve(chars_.size());
  gauss_conj_.reserve(chars_.size());
  for (const auto& c : chars_) {
    gauss_.push_back(gauss_sum(c));
    gauss_conj_.push_back(gauss_sum(c.conjugate()));
  }
}

std::vector<DirichletCharacter> small_modulus_family(long long k) {
  if (k < 1) fail(ErrorCode::domain, "modulus must be >= 1");
  if (k > 1000000) fail(ErrorCode::capacity, "modulus budget is k <= 1e6");
  if (k == 1) return {DirichletCharacter(1, 1, std::vector<int>{0}, true)};

  std::vector<long long> units;
  for (long long u = 1; u < k; ++u)
    if (gcd_ll(u, k) == 1) units.push_back(u);
  long long phi = static_cast<long long>(units.size());

  // group order of each unit (divides phi)
  std::vector<long long> divisors;
  for (long long d = 1; d * d <= phi; ++d) {
    if (phi % d == 0) {
      divisors.push_back(d);
      if (d != phi / d) divisors.push_back(phi / d);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  auto order_of = [&](long long u) {
    for (long long d : divisors) {
      std::uint64_t r = 1, b = static_cast<std::uint64_t>(u), e = static_cast<std::uint64_t>(d);
      while (e) {
        if (e & 1) r = mulmod(r, b, static_cast<std::uint64_t>(k));
        b = mulmod(b, b, static_cast<std::uint64_t>(k));
        e >>= 1;
      }
      if (r == 1) return d;
    }
    fail(ErrorCode::internal, "unit order not found");
    return 0ll;
  };

  std::vector<std::pair<long long, long long>> by_order;  // (-order, u) for descending sort
  by_order.reserve(units.size());
  for (long long u : units)
    if (u != 1) by_order.emplace_back(-order_of(u), u);
  std::sort(by_order.begin(), by_order.end());

  // Greedy basis: accept a candidate when the subgroup product with the span
  // so far stays an internal direct product (all products distinct). The
  // full-group orders are used, so each accepted generator is honestly
  // cyclic of its recorded order and digit arithmetic is additive.
  std::vector<long long> gens, gen_orders;
  std::vector<long long> span{1};
  std::unordered_set<long long> span_set{1};
  for (auto [neg_ord, u] : by_order) {
    if (static_cast<long long>(span.size()) == phi) break;
    long long ord = -neg_ord;
    if (span_set.count(u)) continue;
    std::vector<long long> powers{1};
    std::uint64_t w = static_cast<std::uint64_t>(u);
    for (long long j = 1; j < ord; ++j) {
      powers.push_back(static_cast<long long>(w));
      w = mulmod(w, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(k));
    }
    bool direct = true;
    std::vector<long long> grown;
    grown.reserve(span.size() * powers.size());
    std::unordered_set<long long> grown_set;
    grown_set.reserve(span.size() * powers.size() * 2);
    for (long long s : span) {
      for (long long pw : powers) {
        long long e = static_cast<long long>(mulmod(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(pw),
                                                    static_cast<std::uint64_t>(k)));
        if (!grown_set.insert(e).second) {
          direct = false;
          break;
        }
        grown.push_back(e);
      }
      if (!direct) break;
    }
    if (!direct) continue;
    gens.push_back(u);
    gen_orders.push_back(ord);
    span = std::move(grown);
    span_set = std::move(grown_set);
  }
  if (static_cast<long long>(span.size()) != phi)
    fail(ErrorCode::internal, "unit group generator search did not span the group");

  // digit table: n -> exponents along each generator
  std::size_t r = gens.size();
  std::vector<std::vector<int>> digits(static_cast<std::size_t>(k));
  {
    std::vector<int> x(r, 0);
    for (;;) {
      std::uint64_t e = 1;
      for (std::size_t i = 0; i < r; ++i) {
        std::uint64_t g = static_cast<std::uint64_t>(gens[i]);
        for (int j = 0; j < x[i]; ++j) e = mulmod(e, g, static_cast<std::uint64_t>(k));
      }
      digits[static_cast<std::size_t>(e)] = x;
      std::size_t pos = 0;
      while (pos < r) {
        if (++x[pos] < gen_orders[pos]) break;
        x[pos] = 0;
        ++pos;
      }
      if (pos == r) break;
    }
  }

  long long common = 1;
  for (long long o : gen_orders) common = lcm_ll(common, o);

  std::vector<DirichletCharacter> family;
  family.reserve(static_cast<std::size_t>(phi));
  std::vector<int> c(r, 0);
  for (;;) {
    std::vector<int> expo(static_cast<std::size_t>(k), -1);
    for (long long n = 0; n < k; ++n) {
      if (gcd_ll(n, k) != 1) continue;
      const auto& x = digits[static_cast<std::size_t>(n)];
      long long num = 0;
      for (std::size_t i = 0; i < r; ++i) num = (num + static_cast<long long>(c[i]) * (common / gen_orders[i]) * x[i]) % common;
      expo[static_cast<std::size_t>(n)] = static_cast<int>(num);
    }
    family.emplace_back(k, common, std::move(expo), false);
    std::size_t pos = 0;
    while (pos < r) {
      if (++c[pos] < gen_orders[pos]) break;
      c[pos] = 0;
      ++pos;
    }
    if (pos == r) break;
  }
  return family;
}

OrthogonalityMatrix orthogonality_matrix(long long k, long long q) {
  if (gcd_ll(k, q) != 1) fail(ErrorCode::domain, "moduli must be coprime");
  auto psis = small_modulus_family(k);
  CharacterFamily chis(q);
  OrthogonalityMatrix out;
  for (long long b = 1; b <= k * q; ++b)
    if (gcd_ll(b, k * q) == 1) out.columns.push_back(b);
  std::size_t dim = out.columns.size();
  if (dim != psis.size() * static_cast<std::size_t>(chis.size()))
    fail(ErrorCode::internal, "unit count does not match character count");
  out.dim = static_cast<int>(dim);
  out.m.resize(dim * dim);
  std::size_t row = 0;
  for (const auto& psi : psis) {
    for (int j = 0; j < chis.size(); ++j, ++row) {
      for (std::size_t col = 0; col < dim; ++col) {
        std::uint64_t b = static_cast<std::uint64_t>(out.columns[col]);
        out.m[row * dim + col] = psi.value(b) * chis.chi(j).value(b);
      }
    }
  }
  out.inv.resize(dim * dim);
  double scale = 1.0 / static_cast<double>(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) out.inv[i * dim + j] = std::conj(out.m[j * dim + i]) * scale;
  double err = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      KahanC acc;
      for (std::size_t t = 0; t < dim; ++t) acc.add(out.m[i * dim + t] * out.inv[t * dim + j]);
      cplx expect = i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      err = std::max(err, std::abs(acc.value() - expect));
    }
  }
  out.inverse_error = err;
  if (err > 1e-10) fail(ErrorCode::internal, "orthogonality matrix inverse check failed");
  return out;
}

}  // namespace zetalab
