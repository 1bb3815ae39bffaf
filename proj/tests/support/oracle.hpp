#pragma once

// Brute-force references used by the tests. Nothing here calls the library's
// arithmetic: e-images are expanded densely, equations are searched by nested loops.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "mil/term.hpp"

namespace mil::oracle {

// coefficient of x^k at index k
using Dense = std::vector<mpz_class>;

inline Dense dense_mul(const Dense& p, const Dense& q) {
  Dense r(p.size() + q.size() - 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (q[j] != 0) r[i + j] += p[i] * q[j];
    }
  }
  return r;
}

inline Dense dense_add(Dense p, const Dense& q) {
  if (p.size() < q.size()) p.resize(q.size(), 0);
  for (std::size_t i = 0; i < q.size(); ++i) p[i] += q[i];
  return p;
}

inline Dense expand(const Term& t) {
  if (t.is_leaf()) return {0, 1};
  const Dense a = expand(t.left());
  const Dense b = expand(t.right());
  return dense_add(dense_mul(a, a), dense_mul(dense_mul(b, b), b));
}

struct DenseProfile {
  std::uint64_t degree = 0;
  std::uint64_t order = 0;
  mpz_class lead;
  mpz_class coeff_sum;
};

inline DenseProfile profile(const Dense& p) {
  DenseProfile r;
  bool seen = false;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    if (!seen) r.order = k;
    seen = true;
    r.degree = k;
    r.lead = p[k];
    r.coeff_sum += p[k];
  }
  return r;
}

// Horner at base b.
inline mpz_class dense_eval(const Dense& p, const mpz_class& b) {
  mpz_class v = 0;
  for (std::size_t k = p.size(); k-- > 0;) v = v * b + p[k];
  return v;
}

// Top-down coefficient comparison.
inline int dense_lex(const Dense& p, const Dense& q) {
  const std::size_t n = std::max(p.size(), q.size());
  for (std::size_t k = n; k-- > 0;) {
    const mpz_class a = k < p.size() ? p[k] : mpz_class(0);
    const mpz_class b = k < q.size() ? q[k] : mpz_class(0);
    if (a != b) return a < b ? -1 : 1;
  }
  return 0;
}

inline std::uint64_t catalan(std::uint64_t n) {
  std::uint64_t c = 1;
  for (std::uint64_t k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

inline std::uint64_t p23(unsigned a, unsigned b) {
  std::uint64_t v = 1;
  for (unsigned k = 0; k < a; ++k) v *= 2;
  for (unsigned k = 0; k < b; ++k) v *= 3;
  return v;
}

struct Eq10Row {
  std::array<unsigned, 8> exps;
  std::uint64_t value;
  bool trivial;
};

// Every 8-tuple with exponents <= maxExp, kept when it balances and is already
// in canonical form. maxExp must keep 2^maxExp 3^maxExp * 2 below 2^64.
inline std::vector<Eq10Row> eq10_nested(unsigned maxExp) {
  const unsigned r = maxExp + 1;
  std::vector<std::uint64_t> pw(r * r);
  for (unsigned a = 0; a < r; ++a) {
    for (unsigned b = 0; b < r; ++b) pw[a * r + b] = p23(a, b);
  }
  std::vector<Eq10Row> out;
  for (unsigned a = 0; a < r; ++a)
    for (unsigned b = 0; b < r; ++b)
      for (unsigned c = 0; c < r; ++c)
        for (unsigned d = 0; d < r; ++d) {
          if (std::tie(a, b) > std::tie(c, d)) continue;
          const std::uint64_t lhs = pw[a * r + b] + pw[c * r + d];
          for (unsigned e = 0; e < r; ++e)
            for (unsigned f = 0; f < r; ++f)
              for (unsigned g = 0; g < r; ++g)
                for (unsigned h = 0; h < r; ++h) {
                  if (std::tie(e, f) > std::tie(g, h)) continue;
                  if (std::tie(a, b, c, d) > std::tie(e, f, g, h)) continue;
                  if (pw[e * r + f] + pw[g * r + h] != lhs) continue;
                  const bool trivial = std::tie(a, b, c, d) == std::tie(e, f, g, h);
                  out.push_back({{a, b, c, d, e, f, g, h}, lhs, trivial});
                }
        }
  return out;
}

struct Eq9Row {
  unsigned k1, k2, l1, l2;
};

// Direct search over (k1, k2, l1, l2). A solution value is below 2^{m+k1} 3^{n+k2},
// so l1 <= m + maxK + log2(3)(n + maxK) bounds l1, and likewise l2.
inline std::vector<Eq9Row> eq9_nested(unsigned m, unsigned n, unsigned i, unsigned j, unsigned pi1, unsigned pi2,
                                      unsigned maxK) {
  auto pz = [](unsigned a, unsigned b) {
    mpz_class two, three;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, a);
    mpz_ui_pow_ui(three.get_mpz_t(), 3, b);
    return mpz_class(two * three);
  };
  const mpz_class gap = pz(m + pi1, n + pi2) - pz(i + pi2, j + pi1);
  const unsigned l1max = 2 * (m + n + 2 * maxK) + 2;
  const unsigned l2max = m + n + 2 * maxK + 1;
  std::vector<Eq9Row> out;
  for (unsigned total = 1; total <= maxK; ++total) {
    for (unsigned k1 = 0; k1 <= total; ++k1) {
      const unsigned k2 = total - k1;
      if (k1 == pi1 && k2 == pi2) continue;
      const mpz_class lhs = pz(m + k1, n + k2) - gap;
      for (unsigned l1 = 0; l1 <= l1max; ++l1) {
        for (unsigned l2 = 0; l2 <= l2max; ++l2) {
          if (pz(l1, l2) == lhs) out.push_back({k1, k2, l1, l2});
        }
      }
    }
  }
  return out;
}

}  // namespace mil::oracle
