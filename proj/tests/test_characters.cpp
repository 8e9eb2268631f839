#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "characters.hpp"

using namespace zetalab;

TEST_CASE("prime family basics") {
  CharacterFamily f3(3);
  REQUIRE(f3.size() == 2);
  CHECK(f3.chi(0).is_principal());
  // the nonprincipal character mod 3 is the Legendre symbol
  CHECK(f3.chi(1).value(1).real() == doctest::Approx(1.0));
  CHECK(f3.chi(1).value(2).real() == doctest::Approx(-1.0));
  CHECK(std::abs(f3.chi(1).value(3)) == 0.0);

  CharacterFamily f7(7);
  KahanC sum;
  for (std::uint64_t n = 1; n <= 6; ++n) sum.add(f7.chi(1).value(n));
  CHECK(std::abs(sum.value()) < 1e-12);
}

TEST_CASE("indexing identity chi_h(n) = chi_{n-1}(h+1)") {
  for (long long q : {5ll, 7ll, 11ll, 13ll, 17ll, 19ll, 23ll, 29ll, 31ll}) {
    CharacterFamily fam(q);
    for (long long h = 0; h <= q - 2; ++h)
      for (long long n = 2; n <= q - 1; ++n)
        CHECK(std::abs(fam.chi(static_cast<int>(h)).value(static_cast<std::uint64_t>(n)) -
                       fam.chi(static_cast<int>(n - 1)).value(static_cast<std::uint64_t>(h + 1))) < 1e-12);
  }
}

TEST_CASE("all nonprincipal characters mod a prime are primitive and conjugation-closed") {
  for (long long q : {5ll, 13ll, 31ll}) {
    CharacterFamily fam(q);
    for (int h = 1; h <= q - 2; ++h) {
      CHECK(fam.chi(h).is_primitive());
      // conjugate appears in the family
      auto conj = fam.chi(h).conjugate();
      bool found = false;
      for (int h2 = 0; h2 <= q - 2 && !found; ++h2) {
        bool same = true;
        for (long long n = 0; n < q && same; ++n)
          same = std::abs(fam.chi(h2).value(static_cast<std::uint64_t>(n)) - conj.value(static_cast<std::uint64_t>(n))) < 1e-12;
        found = same;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("character orthogonality is exact at the root-of-unity level") {
  for (long long q : {3ll, 5ll, 7ll, 11ll, 101ll}) {
    CharacterFamily fam(q);
    for (long long m = 1; m < q; m += (q > 20 ? 17 : 1)) {
      for (long long n = 1; n < q; n += (q > 20 ? 13 : 1)) {
        KahanC acc;
        for (int h = 0; h <= q - 2; ++h)
          acc.add(fam.chi(h).value(static_cast<std::uint64_t>(m)) *
                  std::conj(fam.chi(h).value(static_cast<std::uint64_t>(n))));
        double expect = (m % q == n % q) ? static_cast<double>(q - 1) : 0.0;
        CHECK(std::abs(acc.value() - cplx(expect, 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("gauss sums") {
  // |tau(chi)| = sqrt(q) for every primitive chi, q <= 101
  for (long long q : {3ll, 5ll, 7ll, 11ll, 13ll, 31ll, 61ll, 101ll}) {
    CharacterFamily fam(q);
    for (int h = 1; h <= q - 2; ++h) CHECK(std::abs(fam.gauss(h)) == doctest::Approx(std::sqrt(static_cast<double>(q))).epsilon(1e-10));
    // principal character: Ramanujan sum c_q(1) = mu(q) = -1 for prime q
    CHECK(fam.gauss(0).real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(fam.gauss(0).imag()) < 1e-12);
  }
  // Legendre symbol mod 5: tau = sqrt(5) exactly (real positive)
  CharacterFamily f5(5);
  int legendre = -1;
  for (int h = 1; h <= 3; ++h)
    if (f5.chi(h).is_real()) legendre = h;
  REQUIRE(legendre > 0);
  CHECK(f5.gauss(legendre).real() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(std::abs(f5.gauss(legendre).imag()) < 1e-12);
  // direct 4-term oracle
  cplx direct = 0.0;
  for (int b = 1; b <= 4; ++b) direct += f5.chi(legendre).value(b) * unit_phase(b / 5.0);
  CHECK(std::abs(f5.gauss(legendre) - direct) < 1e-12);

  // conjugation: tau(conj chi) = chi(-1) conj(tau(chi))
  for (long long q : {7ll, 13ll, 29ll}) {
    CharacterFamily fam(q);
    for (int h = 1; h <= q - 2; ++h) {
      cplx lhs = fam.gauss_conj(h);
      cplx rhs = fam.chi(h).value(static_cast<std::uint64_t>(q - 1)) * std::conj(fam.gauss(h));
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("general modulus families") {
  auto f1 = small_modulus_family(1);
  REQUIRE(f1.size() == 1);
  CHECK(f1[0].value(1) == cplx(1.0, 0.0));
  CHECK(f1[0].value(17) == cplx(1.0, 0.0));

  auto f4 = small_modulus_family(4);
  REQUIRE(f4.size() == 2);
  CHECK(f4[0].is_principal());
  const auto& chi4 = f4[1];
  CHECK(chi4.value(1).real() == doctest::Approx(1.0));
  CHECK(chi4.value(3).real() == doctest::Approx(-1.0));
  CHECK(std::abs(chi4.value(2)) == 0.0);

  auto f8 = small_modulus_family(8);
  REQUIRE(f8.size() == 4);
  for (const auto& c : f8) CHECK(c.is_real());  // (Z/8)* = C2 x C2

  // multiplicativity and orthogonality for a few k
  for (long long k : {3ll, 8ll, 12ll, 15ll, 16ll, 36ll}) {
    auto fam = small_modulus_family(k);
    CHECK(fam.size() == euler_phi(static_cast<std::uint64_t>(k)));
    for (const auto& c : fam) {
      for (long long m = 1; m < k; ++m)
        for (long long n = 1; n < k; ++n)
          CHECK(std::abs(c.value(static_cast<std::uint64_t>(m)) * c.value(static_cast<std::uint64_t>(n)) -
                         c.value(static_cast<std::uint64_t>(m * n))) < 1e-12);
    }
    // column orthogonality: sum_chi chi(n) = 0 for n != 1 (mod k)
    for (long long n = 2; n < k; ++n) {
      KahanC acc;
      for (const auto& c : fam) acc.add(c.value(static_cast<std::uint64_t>(n)));
      double expect = 0.0;
      CHECK(std::abs(acc.value() - cplx(expect, 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("orthogonality matrix and inverse") {
  auto m1 = orthogonality_matrix(1, 3);
  CHECK(m1.dim == 2);
  CHECK(m1.inverse_error < 1e-12);

  auto m2 = orthogonality_matrix(3, 5);
  CHECK(m2.dim == 8);
  CHECK(m2.inverse_error < 1e-12);

  // row orthogonality: sum_b psi chi(b) conj(psi' chi'(b)) = phi(kq) delta
  std::size_t dim = static_cast<std::size_t>(m2.dim);
  for (std::size_t r1 = 0; r1 < dim; ++r1) {
    for (std::size_t r2 = 0; r2 < dim; ++r2) {
      KahanC acc;
      for (std::size_t c = 0; c < dim; ++c) acc.add(m2.m[r1 * dim + c] * std::conj(m2.m[r2 * dim + c]));
      double expect = r1 == r2 ? static_cast<double>(dim) : 0.0;
      CHECK(std::abs(acc.value() - cplx(expect, 0.0)) < 1e-12);
    }
  }
}
