#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "arith.hpp"
#include "coefficients.hpp"
#include "oracles.hpp"

using namespace zetalab;

TEST_CASE("prime sieve small cases and pi(1e6)") {
  auto s = sieve_primes(10);
  CHECK(s.primes == std::vector<std::uint64_t>{2, 3, 5, 7});
  auto s2 = sieve_primes(2);
  CHECK(s2.primes == std::vector<std::uint64_t>{2});

  auto s3 = sieve_primes(10000);
  for (std::uint64_t n = 0; n <= 200; ++n) CHECK(s3.is_prime[n] == oracles::trial_division_prime(n));
  std::size_t idx = 0;
  for (std::uint64_t n = 2; n <= 10000; ++n)
    if (oracles::trial_division_prime(n)) CHECK(s3.primes.at(idx++) == n);
  CHECK(idx == s3.primes.size());

  auto s4 = sieve_primes(1000000);
  CHECK(static_cast<long long>(s4.primes.size()) == oracles::count_primes_naive(1000000));
  CHECK(s4.primes.size() == 78498);
}

TEST_CASE("segmented prime iteration matches the sieve") {
  auto s = sieve_primes(100000);
  std::vector<std::uint64_t> seen;
  for_primes_in(500, 100000, [&](std::uint64_t p) {
    seen.push_back(p);
    return true;
  });
  std::vector<std::uint64_t> expect;
  for (auto p : s.primes)
    if (p > 500) expect.push_back(p);
  CHECK(seen == expect);
}

TEST_CASE("largest prime factor") {
  CHECK(largest_prime_factor(1) == 1);
  CHECK(largest_prime_factor(12) == 3);
  CHECK(largest_prime_factor(97) == 97);
  CHECK(largest_prime_factor(2 * 3 * 5 * 49) == 7);
}

TEST_CASE("smooth counting and enumeration") {
  CHECK(smooth_count(10, 2) == 4);
  CHECK(smooth_enumerate(10, 2) == std::vector<std::uint64_t>{1, 2, 4, 8});
  CHECK(smooth_count(100, 5) == 34);
  CHECK(smooth_enumerate(7, 7) == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7});
  // y >= x counts everything
  CHECK(smooth_count(1000, 1000) == 1000);
  CHECK(smooth_count(1000.7, 2000) == 1000);

  for (double x : {50.0, 300.0, 1234.0}) {
    for (double y : {2.0, 3.0, 7.0, 50.0}) {
      auto list = smooth_enumerate(x, y);
      CHECK(static_cast<long long>(list.size()) == smooth_count(x, y));
      // cross-check against direct largest-prime-factor filtering
      std::vector<std::uint64_t> direct;
      for (std::uint64_t m = 1; m <= static_cast<std::uint64_t>(x); ++m)
        if (static_cast<double>(largest_prime_factor(m)) <= y) direct.push_back(m);
      CHECK(list == direct);
    }
  }
}

TEST_CASE("buchstab identity Psi(x,y) = 1 + sum_{p<=y} Psi(x/p, p)") {
  for (double x : {100.0, 777.0, 4000.0, 10000.0}) {
    for (double y : {2.0, 5.0, 19.0, 97.0, x}) {
      long long lhs = smooth_count(x, y);
      long long rhs = 1;
      for (std::uint64_t p : sieve_primes(static_cast<std::uint64_t>(std::min(x, y))).primes)
        rhs += smooth_count(x / static_cast<double>(p), static_cast<double>(p));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("smooth_visit factorizations are consistent") {
  long long count = 0;
  smooth_visit(500, 7, [&](std::uint64_t n, const std::vector<std::pair<std::uint64_t, int>>& fact) {
    std::uint64_t prod = 1;
    for (auto [p, h] : fact)
      for (int i = 0; i < h; ++i) prod *= p;
    CHECK(prod == n);
    ++count;
  });
  CHECK(count == smooth_count(500, 7));
}

TEST_CASE("euler phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  // direct count of coprime residues for k q = 3 * 101
  std::uint64_t kq = 303, direct = 0;
  for (std::uint64_t n = 1; n <= kq; ++n) {
    std::uint64_t a = n, b = kq;
    while (b) {
      std::uint64_t t = a % b;
      a = b;
      b = t;
    }
    if (a == 1) ++direct;
  }
  CHECK(euler_phi(303) == direct);
  CHECK(euler_phi(303) == 200);
}

TEST_CASE("lambda parsing, phases, and exact arithmetic") {
  auto third = Lambda::from_rational(1, 3);
  CHECK(third.frac_times(1) == doctest::Approx(1.0 / 3));
  CHECK(third.frac_times(4) == doctest::Approx(1.0 / 3));
  CHECK(third.frac_times(3) == 0.0);

  auto parsed = Lambda::parse("1/3");
  CHECK(parsed.is_rational());
  CHECK(parsed.rational() == Rational(1, 3));

  auto ln2 = Lambda::parse("0.301029995663981195213738894724493027");
  CHECK(!ln2.is_rational());
  CHECK(ln2.to_double() == doctest::Approx(0.30102999566398119).epsilon(1e-15));
  // exactness: frac_times(10^k) should shift digits
  CHECK(ln2.frac_times(10) == doctest::Approx(0.0102999566398119521).epsilon(1e-12));
  CHECK(ln2.frac_times(100) == doctest::Approx(0.102999566398119521).epsilon(1e-12));

  // to_string round-trips the digits
  CHECK(ln2.to_string().substr(0, 20) == "0.301029995663981195");

  // one_minus is exact conjugation of the phase
  auto l = Lambda::parse("0.70710678118654752440084436210484903928");
  auto lm = l.one_minus();
  for (std::uint64_t n : {1ull, 7ull, 1000003ull}) {
    CHECK(l.frac_times(n) + lm.frac_times(n) == doctest::Approx(1.0).epsilon(1e-14));
  }

  // divided_by then times recovers phases to representation accuracy
  auto l3 = l.divided_by(3);
  CHECK(l3.frac_times(3) == doctest::Approx(l.frac_times(1)).epsilon(1e-18));

  CHECK(Lambda::from_rational(1, 1).integral());
  CHECK_THROWS_AS(Lambda::parse("1.5"), Error);
  CHECK_THROWS_AS(Lambda::parse("0"), Error);
}

TEST_CASE("continued-fraction convergents: golden ratio") {
  auto golden = Lambda::parse("0.61803398874989484820458683436563811772");
  auto conv = convergents(golden, 12);
  // Fibonacci ratios F_k / F_{k+1}
  std::vector<Rational> fib;
  long long a = 1, b = 1;
  fib.emplace_back(1, 1);
  for (int i = 0; i < 14; ++i) {
    fib.emplace_back(b, a + b);
    long long t = a + b;
    a = b;
    b = t;
  }
  REQUIRE(conv.size() == 12);
  for (std::size_t i = 0; i < conv.size(); ++i) CHECK(conv[i] == fib[i]);
  // denominators strictly increase and convergents straddle lambda
  double lam = golden.to_double();
  for (std::size_t i = 1; i < conv.size(); ++i) {
    CHECK(conv[i].den > conv[i - 1].den);
    double d1 = conv[i - 1].to_double() - lam;
    double d2 = conv[i].to_double() - lam;
    CHECK(d1 * d2 < 0);
  }
  for (const auto& c : conv) {
    CHECK(std::abs(lam - c.to_double()) < 1.0 / (static_cast<double>(c.den) * static_cast<double>(c.den)));
  }
}

TEST_CASE("continued-fraction convergents: rational and decimal oracle") {
  auto third = Lambda::from_rational(1, 3);
  auto conv = convergents(third, 10);
  REQUIRE(conv.size() == 2);
  CHECK(conv[0] == Rational(0, 1));
  CHECK(conv[1] == Rational(1, 3));

  // independent Euclid oracle on the exact 36-digit decimal fraction
  std::string dec = "0.301029995663981195213738894724493027";
  auto lam = Lambda::parse(dec);
  unsigned __int128 num, den;
  oracles::decimal_fraction_u128(dec, num, den);
  auto digits = oracles::cf_digits_u128(num, den, 12);  // digits[0] = 0
  // convergents from the oracle digits
  unsigned long long hp = 1, kp = 0, h = 0, k = 1;
  std::vector<Rational> expect{Rational(0, 1)};
  for (std::size_t i = 1; i < digits.size(); ++i) {
    unsigned long long hn = digits[i] * h + hp, kn = digits[i] * k + kp;
    hp = h;
    kp = k;
    h = hn;
    k = kn;
    if (!expect.empty() && expect.back().den == static_cast<long long>(k)) expect.pop_back();
    expect.emplace_back(static_cast<long long>(h), static_cast<long long>(k));
  }
  auto got = convergents(lam, static_cast<int>(expect.size()));
  REQUIRE(got.size() >= 5);
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expect[i]);
}

TEST_CASE("prime denominator approximation") {
  auto lam = Lambda::parse("0.301029995663981195213738894724493027");
  auto [a, q, err] = prime_denominator_approx(lam, 0.2, 2, 1000);
  CHECK(is_prime_u64(static_cast<std::uint64_t>(q)));
  CHECK(q >= 3);
  CHECK(q <= 1000);
  long long g = std::gcd(a, q);
  CHECK(g == 1);
  // verify the inequality directly (long double is plenty at this scale)
  long double lamd = 0.301029995663981195213738894724493027L;
  CHECK(std::abs(static_cast<double>(lamd - static_cast<long double>(a) / q)) <
        std::pow(static_cast<double>(q), -1.2));
  CHECK(err < std::pow(static_cast<double>(q), -1.2));

  // oracle: the returned q is the smallest odd prime admissible
  bool earlier = false;
  for (long long qq = 3; qq < q; ++qq) {
    if (!oracles::trial_division_prime(static_cast<std::uint64_t>(qq))) continue;
    long double approx = lamd * qq;
    long long aa = static_cast<long long>(std::llroundl(approx));
    if (aa <= 0 || aa % qq == 0) continue;
    if (std::abs(static_cast<double>(lamd - static_cast<long double>(aa) / qq)) <
        std::pow(static_cast<double>(qq), -1.2))
      earlier = true;
  }
  CHECK(!earlier);

  // degenerate proximity to 1/2: q = 2 is never returned, the scan moves on
  auto near_half = Lambda::parse("0.500000000000000000000000000001");
  auto r2 = prime_denominator_approx(near_half, 0.25, 2, 100);
  CHECK(r2.q >= 3);
  CHECK(std::gcd(r2.a, r2.q) == 1);

  CHECK_THROWS_AS(prime_denominator_approx(lam, 0.32, 999983, 999984), Error);
}

TEST_CASE("primitive roots and index tables") {
  auto pr5 = primitive_root(5);
  CHECK(pr5.g == 2);
  CHECK(pr5.index[1] == 0);
  CHECK(pr5.index[4] == 2);
  auto pr7 = primitive_root(7);
  CHECK(pr7.g == 3);

  // exhaustive order check oracle: g has order q-1
  for (long long q : {5ll, 7ll, 11ll, 101ll}) {
    auto pr = primitive_root(q);
    std::uint64_t pw = 1;
    for (long long e = 1; e < q - 1; ++e) {
      pw = (pw * static_cast<std::uint64_t>(pr.g)) % static_cast<std::uint64_t>(q);
      CHECK(pw != 1);
    }
    // index is a bijection and additive on products
    std::vector<char> seen(static_cast<std::size_t>(q - 1), 0);
    for (long long n = 1; n < q; ++n) seen[static_cast<std::size_t>(pr.index[static_cast<std::size_t>(n)])] = 1;
    for (char c : seen) CHECK(c == 1);
    std::uint64_t state = 12345;
    for (int trial = 0; trial < 100; ++trial) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      long long m = 1 + static_cast<long long>((state >> 33) % static_cast<std::uint64_t>(q - 1));
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      long long n = 1 + static_cast<long long>((state >> 33) % static_cast<std::uint64_t>(q - 1));
      long long mn = (m * n) % q;
      if (mn == 0) continue;
      CHECK((pr.index[static_cast<std::size_t>(m)] + pr.index[static_cast<std::size_t>(n)]) % (q - 1) ==
            pr.index[static_cast<std::size_t>(mn)]);
    }
  }
  CHECK_THROWS_AS(primitive_root(8), Error);
  CHECK_THROWS_AS(primitive_root(2), Error);
}

TEST_CASE("ramanujan tau against the schoolbook product") {
  auto tau = ramanujan_tau(64);
  CHECK(tau[0] == 1);
  CHECK(tau[1] == -24);
  CHECK(tau[2] == 252);
  auto naive = oracles::tau_naive(64);
  for (int i = 0; i < 64; ++i) CHECK(static_cast<long long>(tau[i]) == naive[i]);
  // multiplicativity at coprime arguments and the p^2 recursion
  CHECK(tau[5] == tau[0 + 1] * tau[2]);  // tau(6) = tau(2) tau(3)
  CHECK(tau[3] == tau[1] * tau[1] - 2048);  // tau(4) = tau(2)^2 - 2^11
}

TEST_CASE("tau coefficient source") {
  auto f = tau_source(2000);
  CHECK(std::abs(f->value(1) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(f->degree() == 2);
  auto tau = ramanujan_tau(64);
  // f(4) consistent with the local expansion of prod (1 - f_j(2) X)^{-1}
  auto roots = f->local_roots(2);
  cplx e1 = roots[0] + roots[1], e2 = roots[0] * roots[1];
  cplx c2 = e1 * e1 - e2;  // h = 2 coefficient of the expansion
  CHECK(std::abs(f->prime_power(2, 2) - c2) < 1e-12);
  CHECK(std::abs(f->value(4) - c2) < 1e-12);
  CHECK(std::abs(f->value(4).real() - static_cast<double>(tau[3]) * std::pow(4.0, -5.5)) < 1e-12);
  // Deligne bound observed on primes in the table
  for (std::uint64_t p : sieve_primes(2000).primes) {
    CHECK(std::abs(f->prime_power(p, 1)) <= 2.0 + 1e-12);
    for (auto r : f->local_roots(p)) CHECK(std::abs(std::abs(r) - 1.0) < 1e-12);
  }
}

TEST_CASE("coefficient sources multiply like the euler product") {
  // f(n) from prime powers equals the direct product expansion for n <= 1e4
  auto f = tau_source(10000);
  auto tau = ramanujan_tau(10000);
  for (std::uint64_t n : {1ull, 2ull, 12ull, 720ull, 4096ull, 9999ull, 10000ull}) {
    double expect = static_cast<double>(static_cast<long double>(tau[n - 1]) / std::pow(static_cast<long double>(n), 5.5L));
    CHECK(f->value(n).real() == doctest::Approx(expect).epsilon(1e-10));
    CHECK(std::abs(f->value(n).imag()) < 1e-12);
  }
  auto mu = mobius_source();
  CHECK(mu->value(1).real() == 1.0);
  CHECK(mu->value(6).real() == 1.0);
  CHECK(mu->value(30).real() == -1.0);
  CHECK(mu->value(4).real() == 0.0);
}
