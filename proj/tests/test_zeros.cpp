#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "zeros.hpp"

using namespace zetalab;

namespace {

// 1 - 3 * 2^{-s}: zeros at s = log2(3) + 2 pi i k / log 2, closed form
cplx test_fn(cplx s) { return cplx(1.0, 0.0) - 3.0 * std::exp(-s * std::log(2.0)); }
const double ROOT_SIGMA = std::log(3.0) / std::log(2.0);
const double ROOT_SPACING = TWO_PI / std::log(2.0);

}  // namespace

TEST_CASE("winding numbers of a closed-form function") {
  CHECK(winding_number(test_fn, Rectangle(1.4, 1.8, -1.0, 1.0)) == 1);
  CHECK(winding_number(test_fn, Rectangle(2.0, 3.0, -1.0, 1.0)) == 0);
  CHECK(winding_number(test_fn, Rectangle(1.4, 1.8, -1.0, 10.0)) == 2);

  // integer-stability: doubling the boundary resolution changes nothing
  StepControl fine;
  fine.initial_per_edge = 64;
  CHECK(winding_number(test_fn, Rectangle(1.4, 1.8, -1.0, 10.0), fine) == 2);
  StepControl finer;
  finer.initial_per_edge = 128;
  CHECK(winding_number(test_fn, Rectangle(1.4, 1.8, -1.0, 10.0), finer) == 2);

  // subdivision consistency
  int whole = winding_number(test_fn, Rectangle(1.4, 1.8, -1.0, 19.0));
  int parts = winding_number(test_fn, Rectangle(1.4, 1.8, -1.0, 9.5)) +
              winding_number(test_fn, Rectangle(1.4, 1.8, 9.5, 19.0)) ;
  CHECK(whole == parts);
}

TEST_CASE("find_zeros locates and certifies closed-form roots") {
  auto rep = find_zeros(test_fn, Rectangle(1.4, 1.8, -1.0, 10.0), 1e-10);
  CHECK(rep.winding == 2);
  REQUIRE(rep.zeros.size() == 2);
  CHECK(rep.count_consistent());
  for (std::size_t k = 0; k < rep.zeros.size(); ++k) {
    CHECK(rep.zeros[k].abs_f < 1e-10);
    CHECK(std::abs(rep.zeros[k].s - cplx(ROOT_SIGMA, ROOT_SPACING * static_cast<double>(k))) < 1e-7);
  }

  // zero counts in [1.4, 1.8] x [0, T]
  for (double t_top : {10.0, 20.0, 40.0}) {
    auto r = find_zeros(test_fn, Rectangle(1.4, 1.8, 0.0, t_top), 1e-10);
    long long expect = static_cast<long long>(t_top * std::log(2.0) / TWO_PI) + 1;
    CHECK(static_cast<long long>(r.zeros.size()) == expect);
    for (const auto& z : r.zeros) CHECK(z.abs_f < 1e-10);
  }
}

TEST_CASE("zeta has no zeros beyond sigma = 1") {
  Evaluator zeta = [](cplx s) { return hurwitz_em(s, 1.0, 1e-12); };
  auto rep = find_zeros(zeta, Rectangle(1.1, 1.5, 0.0, 30.0), 1e-9);
  CHECK(rep.winding == 0);
  CHECK(rep.zeros.empty());
}

TEST_CASE("twist evaluator matches direct summation") {
  auto unit = unit_source();
  TwistSpec tw(Lambda::from_rational(2, 7), 1, 3);
  auto fast = twist_evaluator(unit, tw, 1e-12);
  for (cplx s : {cplx(1.6, 2.0), cplx(2.5, -1.0)}) {
    auto direct = twisted_eval(*unit, tw, s, 1e-10);
    CHECK(std::abs(fast(s) - direct.value) < direct.tail + 1e-9);
  }
}

TEST_CASE("sigma_star scan reports none for non-vanishing series") {
  // lambda = 1: plain zeta via hurwitz, nonvanishing for sigma > 1
  auto unit = unit_source();
  TwistSpec tw(Lambda::from_rational(1, 1), 1, 1);
  auto est = sigma_star_estimate(twist_evaluator(unit, tw, 1e-12), 1.01, 1.5, 20.0, 2'000'000);
  CHECK(est.status == "none-found");
  CHECK(est.zeros.empty());

  // lambda = 1/2: (e(n/2) sums) zeros lie on sigma = 1, none beyond
  TwistSpec tw2(Lambda::from_rational(1, 2), 1, 1);
  auto est2 = sigma_star_estimate(twist_evaluator(unit, tw2, 1e-12), 1.01, 1.4, 20.0, 2'000'000);
  CHECK(est2.status == "none-found");
}

TEST_CASE("continuity experiment produces the expected table shape") {
  auto unit = unit_source();
  // rational lambda: constant sequence, every row at the same twist
  auto rows = continuity_experiment(unit, Lambda::from_rational(1, 3), 4, 1.02, 1.3, 6.0, 300'000);
  REQUIRE(rows.size() == 1);  // convergents of 1/3: 0/1 (skipped) and 1/3
  CHECK(rows[0].x_n == "1/3");

  auto golden = Lambda::parse("0.61803398874989484820458683436563811772");
  auto rows2 = continuity_experiment(unit, golden, 5, 1.02, 1.3, 4.0, 120'000);
  REQUIRE(rows2.size() >= 4);
  // monotone denominators on the convergent rows
  for (std::size_t i = 1; i + 1 < rows2.size(); ++i) CHECK(rows2[i].denominator > rows2[i - 1].denominator);
  CHECK(rows2.back().denominator == 0);  // the lambda row
}

TEST_CASE("conjugation symmetry of the twisted series") {
  auto unit = unit_source();
  {
    SymmetryReport rep = symmetry_check(unit, TwistSpec(Lambda::from_rational(1, 5), 1, 1),
                                        {cplx(1.5, 3.0), cplx(2.0, -1.0)});
    CHECK(rep.max_deviation < 1e-12);
  }
  {
    // lambda = 1/2 is self-conjugate: the series is real on the real axis
    auto r = twisted_eval(*unit, TwistSpec(Lambda::from_rational(1, 2), 1, 1), cplx(1.7, 0.0), 1e-9);
    CHECK(std::abs(r.value.imag()) < 1e-12);
  }
  {
    SymmetryReport rep = symmetry_check(unit,
                                        TwistSpec(Lambda::parse("0.30000000000000000000000000000000016"), 1, 1),
                                        {cplx(2.0, 1.0)});
    CHECK(rep.max_deviation < 1e-12);
  }
}
