#include "vpc/linalg.hpp"

#include "vpc/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <utility>

namespace vpc {

namespace {

using I128 = __int128;

Int narrow(I128 v) {
  if (v > static_cast<I128>(INT64_MAX) || v < static_cast<I128>(INT64_MIN))
    throw Error(ErrorCode::Overflow, "64-bit integer overflow");
  return static_cast<Int>(v);
}

I128 gcd128(I128 a, I128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make_rational(I128 n, I128 d) {
  if (d == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  I128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational::reduced(narrow(n), narrow(d));
}

void row_axpy(Vec &dst, const Vec &src, Int q) {
  for (std::size_t j = 0; j < dst.size(); ++j)
    dst[j] = sub_checked(dst[j], mul_checked(q, src[j]));
}

void col_axpy(Mat &m, std::size_t dst, std::size_t src, Int q) {
  for (auto &row : m) row[dst] = sub_checked(row[dst], mul_checked(q, row[src]));
}

void swap_cols(Mat &m, std::size_t a, std::size_t b) {
  for (auto &row : m) std::swap(row[a], row[b]);
}

// Rational row reduction to reduced echelon form; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RVec> &m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == Rational(0)) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (auto &x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == Rational(0)) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

std::vector<RVec> to_rational(const Mat &a) {
  std::vector<RVec> out;
  out.reserve(a.size());
  for (const auto &row : a) out.push_back(to_rvec(row));
  return out;
}

std::size_t last_nonzero(const Vec &v) {
  for (std::size_t i = v.size(); i-- > 0;)
    if (v[i] != 0) return i;
  return v.size();
}

} // namespace

Int add_checked(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "addition overflow");
  return r;
}

Int sub_checked(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "subtraction overflow");
  return r;
}

Int mul_checked(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "multiplication overflow");
  return r;
}

Int gcd(Int a, Int b) { return narrow(gcd128(a, b)); }

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return std::abs(mul_checked(a / gcd(a, b), b));
}

Int ext_gcd(Int a, Int b, Int &x, Int &y) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = sub_checked(old_s, mul_checked(q, s));
    old_s = s;
    s = tmp;
    tmp = sub_checked(old_t, mul_checked(q, t));
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Rational::Rational(Int n, Int d) { *this = make_rational(n, d); }

Rational Rational::operator+(const Rational &o) const {
  return make_rational(static_cast<I128>(num_) * o.den_ + static_cast<I128>(o.num_) * den_,
                       static_cast<I128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational &o) const {
  return make_rational(static_cast<I128>(num_) * o.den_ - static_cast<I128>(o.num_) * den_,
                       static_cast<I128>(den_) * o.den_);
}

Rational Rational::operator*(const Rational &o) const {
  return make_rational(static_cast<I128>(num_) * o.num_, static_cast<I128>(den_) * o.den_);
}

Rational Rational::operator/(const Rational &o) const {
  if (o.num_ == 0) throw Error(ErrorCode::InvalidInput, "division by zero");
  return make_rational(static_cast<I128>(num_) * o.den_, static_cast<I128>(den_) * o.num_);
}

std::strong_ordering Rational::operator<=>(const Rational &o) const {
  I128 l = static_cast<I128>(num_) * o.den_;
  I128 r = static_cast<I128>(o.num_) * den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string &s) {
  auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      Int n = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Rational(n);
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    Int n = std::stoll(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    Int d = std::stoll(b, &used);
    if (used != b.size() || d == 0) throw std::invalid_argument(s);
    return Rational(n, d);
  } catch (const std::logic_error &) {
    throw Error(ErrorCode::ParseError, "bad rational '" + s + "'");
  }
}

Mat identity(std::size_t n) {
  Mat m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, Vec(cols, 0)); }

Mat mat_mul(const Mat &a, const Mat &b) {
  if (a.empty()) return {};
  std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  Mat out = zeros(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        out[i][j] = add_checked(out[i][j], mul_checked(a[i][k], b[k][j]));
    }
  return out;
}

Vec mat_vec(const Mat &a, const Vec &v) {
  Vec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i] = add_checked(out[i], mul_checked(a[i][j], v[j]));
  return out;
}

RVec mat_vec(const Mat &a, const RVec &v) {
  RVec out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (a[i][j] != 0) out[i] += Rational(a[i][j]) * v[j];
  return out;
}

Mat transpose(const Mat &a, std::size_t cols_if_empty) {
  std::size_t cols = a.empty() ? cols_if_empty : a[0].size();
  Mat out = zeros(cols, a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j][i] = a[i][j];
  return out;
}

RVec to_rvec(const Vec &v) { return RVec(v.begin(), v.end()); }

RVec rvec_add(const RVec &a, const RVec &b) {
  RVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RVec rvec_sub(const RVec &a, const RVec &b) {
  RVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool rvec_is_integral(const RVec &v) {
  return std::all_of(v.begin(), v.end(), [](const Rational &x) { return x.is_integer(); });
}

Vec rvec_to_vec(const RVec &v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_integer()) throw Error(ErrorCode::InvalidInput, "non-integral vector");
    out[i] = v[i].num();
  }
  return out;
}

bool is_zero(const Vec &v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

Int det(const Mat &a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  auto m = to_rational(a);
  Rational d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == Rational(0)) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d = d * m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == Rational(0)) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d.num();
}

Mat inverse_unimodular(const Mat &a) {
  std::size_t n = a.size();
  std::vector<RVec> m(n, RVec(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
    m[i][n + i] = Rational(1);
  }
  auto piv = rref(m, 2 * n);
  if (piv.size() != n || (n > 0 && piv.back() != n - 1))
    throw Error(ErrorCode::InvalidInput, "matrix is singular");
  Mat out = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[i][n + j].is_integer()) throw Error(ErrorCode::InvalidInput, "matrix is not unimodular");
      out[i][j] = m[i][n + j].num();
    }
  return out;
}

std::size_t rank(const Mat &a) {
  if (a.empty()) return 0;
  auto m = to_rational(a);
  return rref(m, a[0].size()).size();
}

SmithForm smith(const Mat &a, std::size_t rows, std::size_t cols) {
  Mat m = a.empty() ? zeros(rows, cols) : a;
  SmithForm out;
  out.U = identity(rows);
  out.V = identity(cols);
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Bring the smallest nonzero entry of the trailing block to (t, t).
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (bi == rows || std::abs(m[i][j]) < std::abs(m[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    std::swap(m[t], m[bi]);
    std::swap(out.U[t], out.U[bi]);
    swap_cols(m, t, bj);
    swap_cols(out.V, t, bj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        Int q = m[i][t] / m[t][t];
        row_axpy(m[i], m[t], q);
        row_axpy(out.U[i], out.U[t], q);
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        Int q = m[t][j] / m[t][t];
        col_axpy(m, j, t, q);
        col_axpy(out.V, j, t, q);
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi2 = t, bj2 = t;
        for (std::size_t i = t; i < rows; ++i)
          if (m[i][t] != 0 && std::abs(m[i][t]) < std::abs(m[bi2][bj2])) {
            bi2 = i;
            bj2 = t;
          }
        for (std::size_t j = t; j < cols; ++j)
          if (m[t][j] != 0 && std::abs(m[t][j]) < std::abs(m[bi2][bj2])) {
            bi2 = t;
            bj2 = j;
          }
        std::swap(m[t], m[bi2]);
        std::swap(out.U[t], out.U[bi2]);
        swap_cols(m, t, bj2);
        swap_cols(out.V, t, bj2);
        continue;
      }
      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_axpy(m[t], m[bad], -1);
      row_axpy(out.U[t], out.U[bad], -1);
    }
    if (m[t][t] < 0) {
      for (auto &x : m[t]) x = -x;
      for (auto &x : out.U[t]) x = -x;
    }
    out.d.push_back(m[t][t]);
  }
  out.rank = out.d.size();
  return out;
}

std::vector<Int> invariant_factors(const Mat &a, std::size_t rows, std::size_t cols) {
  return smith(a, rows, cols).d;
}

Mat integer_kernel(const Mat &a, std::size_t rows, std::size_t cols) {
  SmithForm s = smith(a, rows, cols);
  Mat out;
  for (std::size_t j = s.rank; j < cols; ++j) {
    Vec v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = s.V[i][j];
    out.push_back(v);
  }
  return out;
}

std::optional<Vec> solve_integer(const Mat &a, std::size_t rows, std::size_t cols,
                                 const RVec &b) {
  SmithForm s = smith(a, rows, cols);
  RVec ub = mat_vec(s.U, b);
  Vec y(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (i < s.rank) {
      Rational q = ub[i] / Rational(s.d[i]);
      if (!q.is_integer()) return std::nullopt;
      y[i] = q.num();
    } else if (ub[i] != Rational(0)) {
      return std::nullopt;
    }
  }
  return mat_vec(s.V, y);
}

Mat row_hnf(const Mat &input, std::size_t cols) {
  Mat m;
  for (const auto &row : input)
    if (!is_zero(row)) m.push_back(row);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    for (;;) {
      std::size_t best = m.size();
      for (std::size_t i = r; i < m.size(); ++i)
        if (m[i][c] != 0 && (best == m.size() || std::abs(m[i][c]) < std::abs(m[best][c])))
          best = i;
      if (best == m.size()) break;
      std::swap(m[r], m[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        row_axpy(m[i], m[r], m[i][c] / m[r][c]);
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (auto &x : m[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) row_axpy(m[i], m[r], floor_div(m[i][c], m[r][c]));
    ++r;
  }
  m.resize(r);
  return m;
}

Mat lattice_basis(const Mat &vectors, std::size_t n) {
  Mat rev;
  for (const auto &v : vectors) rev.emplace_back(v.rbegin(), v.rend());
  Mat h = row_hnf(rev, n);
  Mat out;
  for (auto it = h.rbegin(); it != h.rend(); ++it) out.emplace_back(it->rbegin(), it->rend());
  return out;
}

Mat basis_columns(const Mat &basis, std::size_t n) { return transpose(basis, n); }

RVec reduce_mod_lattice(const RVec &v, const Mat &basis) {
  RVec out = v;
  for (std::size_t k = basis.size(); k-- > 0;) {
    std::size_t p = last_nonzero(basis[k]);
    Int q = (out[p] / Rational(basis[k][p])).floor();
    if (q == 0) continue;
    for (std::size_t i = 0; i <= p; ++i) out[i] -= Rational(mul_checked(q, basis[k][i]));
  }
  return out;
}

bool in_lattice(const RVec &v, const Mat &basis) {
  RVec r = reduce_mod_lattice(v, basis);
  return std::all_of(r.begin(), r.end(), [](const Rational &x) { return x == Rational(0); });
}

bool in_lattice(const Vec &v, const Mat &basis) { return in_lattice(to_rvec(v), basis); }

Mat lattice_intersection(const Mat &b1, const Mat &b2, std::size_t n) {
  std::size_t r1 = b1.size(), r2 = b2.size();
  if (r1 == 0 || r2 == 0) return {};
  Mat m = zeros(n, r1 + r2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < r1; ++k) m[i][k] = b1[k][i];
    for (std::size_t k = 0; k < r2; ++k) m[i][r1 + k] = -b2[k][i];
  }
  Mat ker = integer_kernel(m, n, r1 + r2);
  Mat vecs;
  for (const auto &x : ker) {
    Vec v(n, 0);
    for (std::size_t k = 0; k < r1; ++k)
      for (std::size_t i = 0; i < n; ++i) v[i] = add_checked(v[i], mul_checked(x[k], b1[k][i]));
    vecs.push_back(v);
  }
  return lattice_basis(vecs, n);
}

Mat lattice_sum(const Mat &b1, const Mat &b2, std::size_t n) {
  Mat all = b1;
  all.insert(all.end(), b2.begin(), b2.end());
  return lattice_basis(all, n);
}

Mat saturate(const Mat &basis, std::size_t n) {
  if (basis.empty()) return {};
  SmithForm s = smith(basis, basis.size(), n);
  Mat vinv = inverse_unimodular(s.V);
  Mat rows(vinv.begin(), vinv.begin() + static_cast<std::ptrdiff_t>(s.rank));
  return lattice_basis(rows, n);
}

namespace {

// Integer coordinates of each inner basis vector in the outer basis.
Mat coordinates_in(const Mat &outer, const Mat &inner, std::size_t n) {
  std::size_t r = outer.size();
  Mat cols = transpose(outer, n);
  Mat coords;
  for (const auto &v : inner) {
    auto x = solve_integer(cols, n, r, to_rvec(v));
    if (!x) throw Error(ErrorCode::NotASubgroup, "lattice is not contained in the outer lattice");
    coords.push_back(*x);
  }
  return coords;
}

} // namespace

std::optional<Int> lattice_index(const Mat &outer, const Mat &inner, std::size_t n) {
  Mat c = coordinates_in(outer, inner, n);
  if (inner.size() != outer.size()) return std::nullopt;
  return std::abs(det(c));
}

Mat lattice_transversal(const Mat &outer, const Mat &inner, std::size_t n) {
  if (inner.size() != outer.size())
    throw Error(ErrorCode::InvalidInput, "transversal of an infinite-index sublattice");
  std::size_t r = outer.size();
  Mat h = row_hnf(coordinates_in(outer, inner, n), r);
  Mat coeffs{Vec(r, 0)};
  for (std::size_t i = 0; i < r; ++i) {
    Mat next;
    for (const auto &c : coeffs)
      for (Int a = 0; a < h[i][i]; ++a) {
        Vec d = c;
        d[i] = a;
        next.push_back(d);
      }
    coeffs = std::move(next);
  }
  Mat out;
  for (const auto &c : coeffs) {
    Vec v(n, 0);
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t i = 0; i < n; ++i) v[i] = add_checked(v[i], mul_checked(c[k], outer[k][i]));
    out.push_back(v);
  }
  return out;
}

Mat span_key(const Mat &vectors, std::size_t n) {
  auto m = to_rational(vectors);
  rref(m, n);
  Mat out;
  for (const auto &row : m) {
    Int l = 1;
    for (const auto &x : row) l = lcm(l, x.den());
    Vec v(n);
    Int g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = (row[i] * Rational(l)).num();
      g = gcd(g, v[i]);
    }
    for (auto &x : v) x /= g;
    out.push_back(v);
  }
  return out;
}

bool span_contains(const Mat &span_basis, const Vec &v, std::size_t n) {
  (void)n;
  Mat m = span_basis;
  std::size_t r = rank(m);
  m.push_back(v);
  return rank(m) == r;
}

std::string vec_str(const Vec &v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string rvec_str(const RVec &v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].str();
  os << ')';
  return os.str();
}

} // namespace vpc
