// Collection from the left for consistent polycyclic presentations.

#include "vpc/error.hpp"
#include "vpc/groups.hpp"

#include <cstdlib>

namespace vpc {

namespace detail {

namespace {

Vec pc_mul(const PcPresentation &p, const Vec &x, const Vec &y);

// Product of x with a single generator g_i^s (s = +1 or -1).
Vec pc_mul_gen(const PcPresentation &p, const Vec &x, std::size_t i, Int s) {
  const std::size_t n = p.size();
  if (s < 0 && !p.infinite(i)) {
    // g_i^-1 = g_i^(r_i - 1) * (g_i^r_i)^-1 with the power word in higher
    // generators.
    Vec acc = x;
    for (Int k = 0; k + 1 < p.relative_orders[i]; ++k) acc = pc_mul_gen(p, acc, i, 1);
    const Vec &w = p.power_relations[i];
    Vec winv(n, 0);
    for (std::size_t j = n; j-- > i + 1;)
      for (Int e = 0; e < std::abs(w[j]); ++e) winv = pc_mul_gen(p, winv, j, w[j] > 0 ? -1 : 1);
    return pc_mul(p, acc, winv);
  }
  Vec head(n, 0), tail(n, 0);
  for (std::size_t j = 0; j < n; ++j) (j <= i ? head : tail)[j] = x[j];
  head[i] = add_checked(head[i], s);
  Vec extra(n, 0);
  if (!p.infinite(i) && head[i] == p.relative_orders[i]) {
    head[i] = 0;
    extra = p.power_relations[i];
  }
  // tail^{g_i^s}: conjugate each collected factor of the tail.
  Vec conj_tail(n, 0);
  for (std::size_t j = i + 1; j < n; ++j) {
    if (tail[j] == 0) continue;
    const Vec &c = s > 0 ? p.conjugates[i][j] : p.conjugates_inv[i][j];
    Vec factor = c;
    Vec acc(n, 0);
    Int e = tail[j];
    if (e < 0) {
      // inverse of the conjugate word
      Vec inv(n, 0);
      for (std::size_t k = n; k-- > 0;)
        for (Int t = 0; t < std::abs(c[k]); ++t) inv = pc_mul_gen(p, inv, k, c[k] > 0 ? -1 : 1);
      factor = inv;
      e = -e;
    }
    for (Int t = 0; t < e; ++t) acc = pc_mul(p, acc, factor);
    conj_tail = pc_mul(p, conj_tail, acc);
  }
  Vec front = head;
  for (std::size_t j = i + 1; j < n; ++j) front[j] = 0;
  Vec r = pc_mul(p, front, extra);
  return pc_mul(p, r, conj_tail);
}

Vec pc_mul(const PcPresentation &p, const Vec &x, const Vec &y) {
  Vec acc = x;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Int e = y[i];
    for (Int t = 0; t < std::abs(e); ++t) acc = pc_mul_gen(p, acc, i, e > 0 ? 1 : -1);
  }
  return acc;
}

} // namespace

Vec pc_multiply(const PcPresentation &p, const Vec &x, const Vec &y) { return pc_mul(p, x, y); }

Vec pc_inverse(const PcPresentation &p, const Vec &x) {
  const std::size_t n = p.size();
  Vec acc(n, 0);
  for (std::size_t i = n; i-- > 0;)
    for (Int t = 0; t < std::abs(x[i]); ++t) acc = pc_mul_gen(p, acc, i, x[i] > 0 ? -1 : 1);
  return acc;
}

Vec pc_gen(const PcPresentation &p, std::size_t i, Int e) {
  Vec acc(p.size(), 0);
  for (Int t = 0; t < std::abs(e); ++t) acc = pc_mul_gen(p, acc, i, e > 0 ? 1 : -1);
  return acc;
}

void pc_validate(PcPresentation &p) {
  const std::size_t n = p.size();
  auto fail = [](const std::string &m) { throw Error(ErrorCode::InvalidInput, m); };
  if (p.relative_orders.size() != n) fail("relative_orders length mismatch");
  p.power_relations.resize(n, Vec(n, 0));
  p.conjugates.resize(n);
  p.conjugates_inv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.relative_orders[i] < 0 || p.relative_orders[i] == 1) fail("relative order must be >= 2 or infinite");
    if (p.power_relations[i].empty()) p.power_relations[i] = Vec(n, 0);
    if (p.power_relations[i].size() != n) fail("power relation length mismatch");
    for (std::size_t j = 0; j <= i; ++j)
      if (p.power_relations[i][j] != 0) fail("power relation must use strictly higher generators");
    p.conjugates[i].resize(n);
    p.conjugates_inv[i].resize(n);
    for (std::size_t j = i + 1; j < n; ++j) {
      auto check = [&](Vec &w, bool required) {
        if (w.empty()) {
          if (required) fail("missing conjugation relation");
          return;
        }
        if (w.size() != n) fail("conjugation relation length mismatch");
        for (std::size_t k = 0; k <= i; ++k)
          if (w[k] != 0) fail("conjugation relation must use strictly higher generators");
      };
      if (p.conjugates[i][j].empty()) {
        Vec unit(n, 0);
        unit[j] = 1;
        p.conjugates[i][j] = unit;
      }
      check(p.conjugates[i][j], true);
      if (p.infinite(i)) {
        if (p.conjugates_inv[i][j].empty()) {
          Vec unit(n, 0);
          unit[j] = 1;
          p.conjugates_inv[i][j] = unit;
        }
        check(p.conjugates_inv[i][j], true);
      }
    }
  }
  // Normal forms: exponents of finite generators must lie in [0, r).
  auto check_normal = [&](const Vec &w) {
    for (std::size_t k = 0; k < n; ++k)
      if (!p.infinite(k) && (w[k] < 0 || w[k] >= p.relative_orders[k]))
        fail("relation word is not in normal form");
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.infinite(i)) check_normal(p.power_relations[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      check_normal(p.conjugates[i][j]);
      if (p.infinite(i)) check_normal(p.conjugates_inv[i][j]);
    }
  }
  // Derive g_j^{g_i^-1} for finite g_i by collection.
  for (std::size_t i = 0; i < n; ++i) {
    if (p.infinite(i)) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec gi = pc_gen(p, i, 1);
      Vec gj = pc_gen(p, j, 1);
      p.conjugates_inv[i][j] = pc_mul(p, pc_mul(p, gi, gj), pc_inverse(p, gi));
    }
  }
  // Consistency: associativity on generator triples and their inverses,
  // x * x^-1 = 1, and the power relations commuting with their generator.
  std::vector<Vec> letters;
  for (std::size_t i = 0; i < n; ++i) {
    letters.push_back(pc_gen(p, i, 1));
    letters.push_back(pc_gen(p, i, -1));
  }
  Vec one(n, 0);
  for (const auto &a : letters) {
    if (pc_mul(p, a, pc_inverse(p, a)) != one) fail("inconsistent presentation (inverse test)");
    for (const auto &b : letters)
      for (const auto &c : letters)
        if (pc_mul(p, pc_mul(p, a, b), c) != pc_mul(p, a, pc_mul(p, b, c)))
          fail("inconsistent presentation (associativity test)");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (p.infinite(i)) continue;
    Vec g = pc_gen(p, i, 1);
    Vec left = one, right = one;
    for (Int k = 0; k < p.relative_orders[i]; ++k) {
      left = pc_mul(p, left, g);
      right = pc_mul(p, g, right);
    }
    if (left != p.power_relations[i] || right != p.power_relations[i])
      fail("inconsistent presentation (power test)");
    for (std::size_t j = 0; j < n; ++j) {
      Vec h = pc_gen(p, j, 1);
      if (pc_mul(p, pc_mul(p, left, g), h) != pc_mul(p, left, pc_mul(p, g, h)))
        fail("inconsistent presentation (power associativity test)");
    }
  }
}

} // namespace detail

} // namespace vpc
