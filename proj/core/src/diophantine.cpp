#include "mil/diophantine.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"

namespace mil {

namespace {

Integer p23(unsigned a, unsigned b) {
  Integer two, three;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, a);
  mpz_ui_pow_ui(three.get_mpz_t(), 3, b);
  return two * three;
}

// Returns (l1, l2) when v = 2^l1 3^l2.
std::optional<std::pair<unsigned, unsigned>> as_p23(Integer v) {
  if (sgn(v) <= 0) return std::nullopt;
  unsigned l1 = mpz_scan1(v.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), l1);
  unsigned l2 = 0;
  while (mpz_divisible_ui_p(v.get_mpz_t(), 3)) {
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), 3);
    ++l2;
  }
  if (v != 1) return std::nullopt;
  return std::make_pair(l1, l2);
}

struct Side {
  Integer value;
  std::array<unsigned, 4> exps;  // a,b,c,d with (a,b) <= (c,d)
};

}  // namespace

std::array<unsigned, 8> canonical_eq10(std::array<unsigned, 8> e) {
  auto order_side = [&](std::size_t o) {
    if (std::make_pair(e[o], e[o + 1]) > std::make_pair(e[o + 2], e[o + 3])) {
      std::swap(e[o], e[o + 2]);
      std::swap(e[o + 1], e[o + 3]);
    }
  };
  order_side(0);
  order_side(4);
  if (!std::lexicographical_compare(e.begin(), e.begin() + 4, e.begin() + 4, e.end()) &&
      !std::equal(e.begin(), e.begin() + 4, e.begin() + 4)) {
    std::swap_ranges(e.begin(), e.begin() + 4, e.begin() + 4);
  }
  return e;
}

std::vector<Eq10Solution> solve_eq10(unsigned maxExp, unsigned limit, unsigned workers) {
  if (maxExp > limit) {
    throw std::out_of_range("maxExp " + std::to_string(maxExp) + " exceeds the limit " + std::to_string(limit));
  }
  const unsigned r = maxExp + 1;
  std::vector<std::pair<unsigned, unsigned>> points;
  for (unsigned a = 0; a < r; ++a) {
    for (unsigned b = 0; b < r; ++b) points.emplace_back(a, b);
  }
  // Unordered two-term sums, rows split across workers.
  std::vector<std::vector<Side>> rows(points.size());
  detail::parallel_for(points.size(), workers, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t p = lo; p < hi; ++p) {
      const Integer vp = p23(points[p].first, points[p].second);
      for (std::size_t q = p; q < points.size(); ++q) {
        rows[p].push_back({vp + p23(points[q].first, points[q].second),
                           {points[p].first, points[p].second, points[q].first, points[q].second}});
      }
    }
  });
  std::vector<Side> table;
  for (auto& row : rows) std::move(row.begin(), row.end(), std::back_inserter(table));
  std::sort(table.begin(), table.end(), [](const Side& x, const Side& y) {
    if (int c = cmp(x.value, y.value); c != 0) return c < 0;
    return x.exps < y.exps;
  });

  std::vector<Eq10Solution> out;
  for (std::size_t lo = 0; lo < table.size();) {
    std::size_t hi = lo + 1;
    while (hi < table.size() && table[hi].value == table[lo].value) ++hi;
    for (std::size_t s = lo; s < hi; ++s) {
      for (std::size_t t = s; t < hi; ++t) {
        Eq10Solution sol;
        std::copy(table[s].exps.begin(), table[s].exps.end(), sol.exps.begin());
        std::copy(table[t].exps.begin(), table[t].exps.end(), sol.exps.begin() + 4);
        sol.exps = canonical_eq10(sol.exps);
        sol.value = table[s].value;
        sol.trivial = s == t;
        out.push_back(std::move(sol));
      }
    }
    lo = hi;
  }
  std::sort(out.begin(), out.end(), [](const Eq10Solution& x, const Eq10Solution& y) { return x.exps < y.exps; });
  return out;
}

Integer eq9_dgap(const Eq9Params& p) {
  if (!((p.pi1 == 0 && p.pi2 == 1) || (p.pi1 == 1 && p.pi2 == 0))) {
    throw std::invalid_argument("{pi1, pi2} must be {0, 1}");
  }
  Integer gap = p23(p.m + p.pi1, p.n + p.pi2) - p23(p.i + p.pi2, p.j + p.pi1);
  if (sgn(gap) <= 0) throw std::invalid_argument("dgap " + gap.get_str() + " is not positive");
  return gap;
}

std::vector<Eq9Solution> solve_eq9(const Eq9Params& p, unsigned maxK, unsigned limit) {
  if (maxK > limit) {
    throw std::out_of_range("maxK " + std::to_string(maxK) + " exceeds the limit " + std::to_string(limit));
  }
  const Integer gap = eq9_dgap(p);
  std::vector<Eq9Solution> out;
  for (unsigned total = 1; total <= maxK; ++total) {
    for (unsigned k1 = 0; k1 <= total; ++k1) {
      const unsigned k2 = total - k1;
      if (k1 == p.pi1 && k2 == p.pi2) continue;
      const Integer lhs = p23(p.m + k1, p.n + k2) - gap;
      if (auto l = as_p23(lhs)) out.push_back({k1, k2, l->first, l->second, lhs});
    }
  }
  return out;
}

std::array<unsigned, 8> eq9_as_eq10(const Eq9Params& p, const Eq9Solution& s) {
  // 2^{m+k1} 3^{n+k2} + 2^{i+pi2} 3^{j+pi1} = 2^{l1} 3^{l2} + 2^{m+pi1} 3^{n+pi2}
  return {p.m + s.k1, p.n + s.k2, p.i + p.pi2, p.j + p.pi1, s.l1, s.l2, p.m + p.pi1, p.n + p.pi2};
}

std::string eq10_csv(const std::vector<Eq10Solution>& solutions) {
  std::ostringstream out;
  out << "a,b,c,d,e,f,g,h,value,trivial\n";
  for (const auto& s : solutions) {
    for (unsigned e : s.exps) out << e << ',';
    out << s.value.get_str() << ',' << (s.trivial ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string eq9_csv(const std::vector<Eq9Solution>& solutions) {
  std::ostringstream out;
  out << "k1,k2,l1,l2,value\n";
  for (const auto& s : solutions) {
    out << s.k1 << ',' << s.k2 << ',' << s.l1 << ',' << s.l2 << ',' << s.value.get_str() << '\n';
  }
  return out.str();
}

}  // namespace mil
