#pragma once

#include "arith.hpp"
#include "support.hpp"

namespace zetalab {

// Dirichlet character with exact root-of-unity values: chi(n) = e(num/den)
// where num = expo(n mod q), or 0 when gcd(n, q) > 1. Keeping values as
// exponents makes orthogonality sums exact at the integer level and Gauss
// sums stable.
class DirichletCharacter {
 public:
  DirichletCharacter(long long modulus, long long den, std::vector<int> expo, bool primitive);

  long long modulus() const { return q_; }
  long long exponent_den() const { return den_; }
  // exponent of chi(n) over exponent_den(), or -1 when chi(n) = 0
  int exponent(std::uint64_t n) const { return expo_[static_cast<std::size_t>(n % static_cast<std::uint64_t>(q_))]; }
  cplx value(std::uint64_t n) const {
    int e = exponent(n);
    return e < 0 ? cplx(0.0, 0.0) : unit_phase(static_cast<double>(e) / static_cast<double>(den_));
  }
  cplx operator()(std::uint64_t n) const { return value(n); }

  bool is_principal() const;
  bool is_primitive() const { return primitive_; }
  bool is_real() const;
  long long order() const;
  DirichletCharacter conjugate() const;

 private:
  long long q_;
  long long den_;
  std::vector<int> expo_;  // size q, -1 marks chi = 0
  bool primitive_;
};

// tau(chi) = sum_{b=1..q} chi(b) e(b/q), accumulated as exact root-of-unity
// counts when the common order is small.
cplx gauss_sum(const DirichletCharacter& chi);

// All q-1 characters mod an odd prime q, indexed so that
//   chi_h(n) = e(index(h+1) index(n) / (q-1)),
// with chi_0 principal and chi_1..chi_{q-2} primitive. The index is taken
// relative to the least primitive root. This makes chi_h(n) = chi_{n-1}(h+1).
class CharacterFamily {
 public:
  explicit CharacterFamily(long long q);

  long long modulus() const { return q_; }
  int size() const { return static_cast<int>(chars_.size()); }
  const DirichletCharacter& chi(int h) const { return chars_.at(static_cast<std::size_t>(h)); }
  cplx gauss(int h) const { return gauss_.at(static_cast<std::size_t>(h)); }
  cplx gauss_conj(int h) const { return gauss_conj_.at(static_cast<std::size_t>(h)); }
  const PrimitiveRoot& root() const { return root_; }

 private:
  long long q_;
  PrimitiveRoot root_;
  std::vector<DirichletCharacter> chars_;
  std::vector<cplx> gauss_;
  std::vector<cplx> gauss_conj_;  // tau(conj chi_h)
};

// All phi(k) characters mod k for general k >= 1, built from a generating
// set of the unit group found by brute-force search (no CRT). Deterministic
// order with the principal character first.
std::vector<DirichletCharacter> small_modulus_family(long long k);

// The phi(kq) x phi(kq) matrix (psi(b) chi_j(b)) over rows (psi mod k,
// chi_j mod q) and columns b coprime to kq, together with its inverse
// conj(M)^T / phi(kq). Construction verifies M inv = I.
struct OrthogonalityMatrix {
  int dim = 0;
  std::vector<long long> columns;  // the units b mod kq, ascending
  std::vector<cplx> m;             // row-major dim x dim
  std::vector<cplx> inv;
  double inverse_error = 0;  // max |(M inv - I)_{uv}|
};
OrthogonalityMatrix orthogonality_matrix(long long k, long long q);

}  // namespace zetalab
