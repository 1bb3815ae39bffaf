#pragma once

// Bounded solvers for 2^a 3^b + 2^c 3^d = 2^e 3^f + 2^g 3^h and for
// 2^{m+k1} 3^{n+k2} - (2^{m+pi1} 3^{n+pi2} - 2^{i+pi2} 3^{j+pi1}) = 2^{l1} 3^{l2}.

#include <array>
#include <string>
#include <vector>

#include "mil/poly.hpp"

namespace mil {

inline constexpr unsigned kDefaultEq10Limit = 16;
inline constexpr unsigned kDefaultEq9Limit = 64;

struct Eq10Solution {
  std::array<unsigned, 8> exps{};  // a,b,c,d,e,f,g,h
  Integer value;                   // either side
  bool trivial = false;            // {(a,b),(c,d)} = {(e,f),(g,h)}
  friend bool operator==(const Eq10Solution&, const Eq10Solution&) = default;
};

// Canonical form: (a,b) <= (c,d), (e,f) <= (g,h), (a,b,c,d) <= (e,f,g,h).
std::array<unsigned, 8> canonical_eq10(std::array<unsigned, 8> exps);

// Every solution with all exponents <= maxExp, once each in canonical form,
// sorted by exponent tuple. Throws std::out_of_range when maxExp > limit.
std::vector<Eq10Solution> solve_eq10(unsigned maxExp, unsigned limit = kDefaultEq10Limit, unsigned workers = 1);

struct Eq9Params {
  unsigned m = 0, n = 0, i = 0, j = 0;
  unsigned pi1 = 0, pi2 = 1;
};

struct Eq9Solution {
  unsigned k1 = 0, k2 = 0, l1 = 0, l2 = 0;
  Integer value;  // 2^{l1} 3^{l2}
  friend bool operator==(const Eq9Solution&, const Eq9Solution&) = default;
};

// 2^{m+pi1} 3^{n+pi2} - 2^{i+pi2} 3^{j+pi1}; throws std::invalid_argument when
// {pi1,pi2} != {0,1} or the gap is not positive.
Integer eq9_dgap(const Eq9Params& p);

// All (k1,k2) with 1 <= k1+k2 <= maxK, (k1,k2) != (pi1,pi2), for which the
// left side is a positive 2^{l1} 3^{l2}; sorted by (k1+k2, k1).
std::vector<Eq9Solution> solve_eq9(const Eq9Params& p, unsigned maxK, unsigned limit = kDefaultEq9Limit);

// The four-term form of an eq9 solution (not canonicalized).
std::array<unsigned, 8> eq9_as_eq10(const Eq9Params& p, const Eq9Solution& s);

std::string eq10_csv(const std::vector<Eq10Solution>& solutions);
std::string eq9_csv(const std::vector<Eq9Solution>& solutions);

}  // namespace mil
