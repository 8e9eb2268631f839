#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetalab {

using cplx = std::complex<double>;
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr double PI = 3.14159265358979323846264338327950288;
inline constexpr double TWO_PI = 2.0 * PI;

// Error taxonomy shared with the C API; codes match the CLI exit codes
// where they overlap (usage=2, guard=3, infeasible=4).
enum class ErrorCode : int {
  ok = 0,
  usage = 2,
  guard = 3,
  infeasible = 4,
  domain = 5,
  capacity = 6,
  not_found = 7,
  internal = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

// Compensated (Kahan-Neumaier) accumulator. Sums with more than ~1e5 terms
// lose digits otherwise.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct KahanC {
  Kahan re, im;
  void add(cplx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

// e(x) = exp(2 pi i x)
inline cplx unit_phase(double frac) { return std::polar(1.0, TWO_PI * frac); }

std::string format_double(double x);
std::string format_complex(cplx z);

// Deterministic splittable generator: every consumer derives its stream from
// (seed, tag) so output does not depend on evaluation order.
std::uint64_t mix_seed(std::uint64_t seed, const std::string& tag);

// Runs fn(i) for i in [0, n) on the session worker pool; results must be
// written into caller-owned slots, merging stays deterministic.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

std::string u128_to_string(u128 v);

}  // namespace zetalab
