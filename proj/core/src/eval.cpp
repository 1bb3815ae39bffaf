#include "mil/eval.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "mil/catalog.hpp"

namespace mil {

namespace {

constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;
constexpr std::array<std::uint64_t, 2> kResiduePoints{1'234'567'891'011ULL, 987'654'321'987ULL};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kMersenne61);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t r = lo + hi;
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

Exponent checked_scale(Exponent d, Exponent k) {
  if (d > std::numeric_limits<Exponent>::max() / k) throw std::overflow_error("dege exceeds 64 bits");
  return d * k;
}

Poly square_plus_cube(const Poly& a, const Poly& b, std::size_t cap) {
  Poly b2 = multiply(b, b, cap);
  return multiply(a, a, cap) + multiply(b2, b, cap);
}

}  // namespace

Poly evaluate_exact(const Term& t, std::size_t cap) {
  if (t.is_leaf()) return Poly::x();
  return square_plus_cube(evaluate_exact(t.left(), cap), evaluate_exact(t.right(), cap), cap);
}

DegreeOrder dege_orde(const Term& t) {
  if (t.is_leaf()) return {1, 1};
  const DegreeOrder a = dege_orde(t.left());
  const DegreeOrder b = dege_orde(t.right());
  return {std::max(checked_scale(a.dege, 2), checked_scale(b.dege, 3)), std::min(2 * a.orde, 3 * b.orde)};
}

Integer coeff_sum_fast(const Term& t) {
  if (t.is_leaf()) return 1;
  Integer a = coeff_sum_fast(t.left());
  Integer b = coeff_sum_fast(t.right());
  return a * a + b * b * b;
}

Integer lead_fast(const Term& t) { return invariants(t).lead; }

Invariants Invariants::of_x() {
  Invariants inv;
  inv.residues = kResiduePoints;
  return inv;
}

bool operator==(const Invariants& a, const Invariants& b) {
  return a.dege == b.dege && a.orde == b.orde && a.residues == b.residues && a.coeff_sum == b.coeff_sum &&
         a.lead == b.lead;
}

std::strong_ordering operator<=>(const Invariants& a, const Invariants& b) {
  if (auto c = a.dege <=> b.dege; c != 0) return c;
  if (auto c = a.orde <=> b.orde; c != 0) return c;
  if (int c = cmp(a.coeff_sum, b.coeff_sum); c != 0) return c <=> 0;
  if (int c = cmp(a.lead, b.lead); c != 0) return c <=> 0;
  return a.residues <=> b.residues;
}

Invariants compose(const Invariants& left, const Invariants& right) {
  Invariants out;
  const Exponent dl = checked_scale(left.dege, 2);
  const Exponent dr = checked_scale(right.dege, 3);
  out.dege = std::max(dl, dr);
  out.orde = std::min(2 * left.orde, 3 * right.orde);
  if (dl > dr) {
    out.lead = left.lead * left.lead;
  } else if (dr > dl) {
    out.lead = right.lead * right.lead * right.lead;
  } else {
    out.lead = left.lead * left.lead + right.lead * right.lead * right.lead;
  }
  out.coeff_sum = left.coeff_sum * left.coeff_sum + right.coeff_sum * right.coeff_sum * right.coeff_sum;
  for (std::size_t i = 0; i < out.residues.size(); ++i) {
    const std::uint64_t a = left.residues[i];
    const std::uint64_t b = right.residues[i];
    out.residues[i] = addmod(mulmod(a, a), mulmod(mulmod(b, b), b));
  }
  return out;
}

Invariants invariants(const Term& t) {
  if (t.is_leaf()) return Invariants::of_x();
  return compose(invariants(t.left()), invariants(t.right()));
}

Integer fingerprint_value(const Term& t, const Integer& base) {
  if (t.is_leaf()) return base;
  Integer a = fingerprint_value(t.left(), base);
  Integer b = fingerprint_value(t.right(), base);
  Integer out;
  mpz_mul(out.get_mpz_t(), a.get_mpz_t(), a.get_mpz_t());
  mpz_mul(a.get_mpz_t(), b.get_mpz_t(), b.get_mpz_t());
  mpz_addmul(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Fingerprint fingerprint(const Term& t, const Integer& base) {
  const Invariants inv = invariants(t);
  if (base <= inv.coeff_sum) {
    throw UnfaithfulBase("base " + base.get_str() + " does not exceed coefficient sum " + inv.coeff_sum.get_str());
  }
  return {base, fingerprint_value(t, base), inv.dege, inv.orde, inv.coeff_sum};
}

bool e_equivalent(const Term& a, const Term& b) {
  if (a == b) return true;
  const Invariants ia = invariants(a);
  const Invariants ib = invariants(b);
  if (!(ia == ib)) return false;
  const Integer base = std::max(ia.coeff_sum, ib.coeff_sum) + 1;
  return fingerprint_value(a, base) == fingerprint_value(b, base);
}

std::strong_ordering lex_compare_terms(const Term& a, const Term& b) {
  if (a == b) return std::strong_ordering::equal;
  const Invariants ia = invariants(a);
  const Invariants ib = invariants(b);
  if (auto c = ia.dege <=> ib.dege; c != 0) return c;
  if (int c = cmp(ia.lead, ib.lead); c != 0) return c <=> 0;
  const Integer base = std::max(ia.coeff_sum, ib.coeff_sum) + 1;
  return cmp(fingerprint_value(a, base), fingerprint_value(b, base)) <=> 0;
}

std::vector<std::vector<std::size_t>> group_by_e_image(const std::vector<Term>& terms) {
  std::vector<Invariants> inv;
  inv.reserve(terms.size());
  for (const Term& t : terms) inv.push_back(invariants(t));
  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return inv[a] < inv[b]; });

  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && inv[order[hi]] == inv[order[lo]]) ++hi;
    if (hi - lo == 1) {
      classes.push_back({order[lo]});
    } else {
      // Candidate run: confirm with fingerprints at the run's shared faithful base.
      const Integer base = inv[order[lo]].coeff_sum + 1;
      std::vector<std::pair<Integer, std::size_t>> values;
      for (std::size_t k = lo; k < hi; ++k) values.emplace_back(fingerprint_value(terms[order[k]], base), order[k]);
      std::stable_sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t k = 0; k < values.size();) {
        std::size_t m = k + 1;
        while (m < values.size() && values[m].first == values[k].first) ++m;
        std::vector<std::size_t> members;
        for (std::size_t r = k; r < m; ++r) members.push_back(values[r].second);
        std::sort(members.begin(), members.end());
        classes.push_back(std::move(members));
        k = m;
      }
    }
    lo = hi;
  }
  // Renumber classes by first member.
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

IsolationResult is_e_isolated(const Term& t, std::uint64_t budget) {
  const Term shape = collapse(t);
  IsolationResult result;
  EquivalentsResult found = e_equivalents(shape, budget);
  result.candidates = found.candidates;
  if (!found.feasible) {
    result.status = IsolationStatus::Infeasible;
    return result;
  }
  for (const Term& candidate : found.terms) {
    if (candidate != shape) {
      result.status = IsolationStatus::Witness;
      result.witness = candidate;
      return result;
    }
  }
  result.status = IsolationStatus::Isolated;
  return result;
}

}  // namespace mil
