#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal forms,
// integer kernels and solvers, lattice canonical forms.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vpc {

using Int = std::int64_t;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>; // row-major

Int add_checked(Int a, Int b);
Int sub_checked(Int a, Int b);
Int mul_checked(Int a, Int b);
Int gcd(Int a, Int b);
Int lcm(Int a, Int b);
/// Returns g = gcd(a, b) >= 0 together with x, y such that a*x + b*y = g.
Int ext_gcd(Int a, Int b, Int &x, Int &y);
/// Floor division for b > 0.
Int floor_div(Int a, Int b);

class Rational {
public:
  Rational() = default;
  Rational(Int n) : num_(n), den_(1) {} // NOLINT(google-explicit-constructor)
  Rational(Int n, Int d);

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  Int floor() const { return floor_div(num_, den_); }

  Rational operator+(const Rational &o) const;
  Rational operator-(const Rational &o) const;
  Rational operator*(const Rational &o) const;
  Rational operator/(const Rational &o) const;
  Rational operator-() const { return Rational(-num_, den_); }
  Rational &operator+=(const Rational &o) { return *this = *this + o; }
  Rational &operator-=(const Rational &o) { return *this = *this - o; }

  bool operator==(const Rational &o) const = default;
  std::strong_ordering operator<=>(const Rational &o) const;

  std::string str() const;
  static Rational parse(const std::string &s);
  /// n/d already in lowest terms with d > 0.
  static Rational reduced(Int n, Int d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }

private:
  Int num_ = 0;
  Int den_ = 1;
};

using RVec = std::vector<Rational>;

Mat identity(std::size_t n);
Mat zeros(std::size_t rows, std::size_t cols);
Mat mat_mul(const Mat &a, const Mat &b);
Vec mat_vec(const Mat &a, const Vec &v);
RVec mat_vec(const Mat &a, const RVec &v);
Mat transpose(const Mat &a, std::size_t cols_if_empty = 0);
RVec to_rvec(const Vec &v);
RVec rvec_add(const RVec &a, const RVec &b);
RVec rvec_sub(const RVec &a, const RVec &b);
bool rvec_is_integral(const RVec &v);
Vec rvec_to_vec(const RVec &v);
bool is_zero(const Vec &v);

/// Exact determinant of a square integer matrix.
Int det(const Mat &a);
/// Inverse of an integer matrix with determinant +-1.
Mat inverse_unimodular(const Mat &a);
/// Rank over the rationals.
std::size_t rank(const Mat &a);

struct SmithForm {
  Mat U;              // m x m unimodular
  Mat V;              // n x n unimodular
  std::vector<Int> d; // nonzero invariant factors d1 | d2 | ...
  std::size_t rank = 0;
};

/// U * A * V = diag(d, 0) for an m x n integer matrix A.
SmithForm smith(const Mat &a, std::size_t rows, std::size_t cols);
/// Invariant factors only, without transforms.
std::vector<Int> invariant_factors(const Mat &a, std::size_t rows, std::size_t cols);

/// Basis (as rows) of the integer kernel {x in Z^cols : A x = 0}.
Mat integer_kernel(const Mat &a, std::size_t rows, std::size_t cols);
/// Some integer solution of A x = b, if one exists.
std::optional<Vec> solve_integer(const Mat &a, std::size_t rows, std::size_t cols,
                                 const RVec &b);

/// Row Hermite normal form of the row span: pivots strictly increasing to the
/// right, positive, entries above each pivot reduced into [0, pivot).
Mat row_hnf(const Mat &rows, std::size_t cols);

/// Canonical basis of the lattice spanned by `vectors` in Z^n. Each basis
/// vector's pivot is its last nonzero coordinate; pivots strictly increase
/// along the returned list and the other basis vectors are reduced into
/// [0, pivot) at that coordinate. Read as columns this is the column HNF.
Mat lattice_basis(const Mat &vectors, std::size_t n);
/// Column-form rendering of a lattice basis (basis vectors as columns).
Mat basis_columns(const Mat &basis, std::size_t n);
/// Canonical representative of v + L for the lattice with the given basis.
RVec reduce_mod_lattice(const RVec &v, const Mat &basis);
bool in_lattice(const RVec &v, const Mat &basis);
bool in_lattice(const Vec &v, const Mat &basis);
/// Basis of the intersection of two lattices in Z^n.
Mat lattice_intersection(const Mat &b1, const Mat &b2, std::size_t n);
/// Basis of L1 + L2.
Mat lattice_sum(const Mat &b1, const Mat &b2, std::size_t n);
/// Basis of span(L) intersected with Z^n.
Mat saturate(const Mat &basis, std::size_t n);
/// |L1 : L2| for L2 <= L1 of equal rank; nullopt when ranks differ.
std::optional<Int> lattice_index(const Mat &outer, const Mat &inner, std::size_t n);
/// Coset representatives of L1 / L2 for L2 <= L1 of equal rank.
Mat lattice_transversal(const Mat &outer, const Mat &inner, std::size_t n);
/// Canonical key of the rational span: reduced row echelon form over Q,
/// scaled to primitive integer rows.
Mat span_key(const Mat &vectors, std::size_t n);
bool span_contains(const Mat &span_basis, const Vec &v, std::size_t n);

std::string vec_str(const Vec &v);
std::string rvec_str(const RVec &v);

} // namespace vpc
