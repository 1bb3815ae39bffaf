#include "mil/search.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "mil/fingerprint_cache.hpp"
#include "mil/multivar.hpp"
#include "parallel.hpp"

namespace mil {

namespace {

// Cache files hold every term's fingerprint only when the total stays small.
constexpr std::uint64_t kFullCacheBits = std::uint64_t{1} << 24;

using InvariantSet = std::vector<Invariants>;  // [0] collapsed, [k] under x_k -> f(x,x)

struct Key {
  std::uint64_t dege = 0;
  std::uint64_t orde = 0;
  std::uint64_t r0 = 0;
  std::uint64_t r1 = 0;
  std::uint64_t digest = 0;
  friend auto operator<=>(const Key&, const Key&) = default;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdULL;
  return h ^ (h >> 32);
}

std::uint64_t digest(std::uint64_t h, const Integer& v) {
  const mpz_srcptr z = v.get_mpz_t();
  const std::size_t n = mpz_size(z);
  h = mix(h, n);
  for (std::size_t i = 0; i < n; ++i) h = mix(h, mpz_getlimbn(z, i));
  return h;
}

Key key_of(const InvariantSet& s) {
  Key k{s[0].dege, s[0].orde, s[0].residues[0], s[0].residues[1], 0};
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (const Invariants& inv : s) {
    h = mix(h, inv.dege);
    h = mix(h, inv.orde);
    h = mix(h, inv.residues[0]);
    h = mix(h, inv.residues[1]);
    h = digest(h, inv.coeff_sum);
    h = digest(h, inv.lead);
  }
  k.digest = h;
  return k;
}

InvariantSet leaf_set(VarIndex var, VarIndex numVars) {
  InvariantSet s(numVars == 1 ? 1 : numVars + 1, Invariants::of_x());
  if (numVars > 1) s[var] = compose(Invariants::of_x(), Invariants::of_x());
  return s;
}

InvariantSet compose_sets(const InvariantSet& l, const InvariantSet& r) {
  InvariantSet s;
  s.reserve(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) s.push_back(compose(l[i], r[i]));
  return s;
}

InvariantSet invariant_set(const Term& t, VarIndex numVars) {
  if (t.is_leaf()) return leaf_set(t.var_index(), numVars);
  return compose_sets(invariant_set(t.left(), numVars), invariant_set(t.right(), numVars));
}

class Confirmer {
 public:
  Confirmer(const SearchOptions& options, VarIndex numVars, const Integer& base, FingerprintCache* cache)
      : options_(options), numVars_(numVars), base_(base), cache_(cache) {}

  // Splits one exact-invariant class into e-equivalence classes; appends
  // identities and undecided pairs to the report.
  void resolve(const std::vector<Term>& group, SearchReport& report) {
    if (numVars_ == 1) {
      resolve_single(group, report);
    } else {
      resolve_multi(group, report);
    }
  }

 private:
  void resolve_single(const std::vector<Term>& group, SearchReport& report) {
    std::vector<Poly> images;
    try {
      for (const Term& t : group) images.push_back(evaluate_exact(t, options_.expansion_cap));
    } catch (const ExpansionCapExceeded&) {
      images.clear();
    }
    if (!images.empty()) {
      emit_classes(group, [&](std::size_t i, std::size_t j) { return images[i] == images[j]; }, ConfirmMethod::Expansion,
                   report);
      return;
    }
    std::vector<std::array<Integer, 3>> values;
    for (const Term& t : group) {
      std::array<Integer, 3> v;
      for (int k = 0; k < 3; ++k) v[k] = value_at(t, base_ + k);
      values.push_back(std::move(v));
    }
    emit_classes(group, [&](std::size_t i, std::size_t j) { return values[i] == values[j]; }, ConfirmMethod::ThreeBases,
                 report);
  }

  void resolve_multi(const std::vector<Term>& group, SearchReport& report) {
    std::vector<MPoly> images;
    try {
      for (const Term& t : group) images.push_back(mv_evaluate(t, numVars_, options_.expansion_cap));
    } catch (const ExpansionCapExceeded&) {
      for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) report.unresolved.emplace_back(group[i], group[j]);
      }
      return;
    }
    emit_classes(group, [&](std::size_t i, std::size_t j) { return images[i] == images[j]; }, ConfirmMethod::Expansion,
                 report);
  }

  template <class Eq>
  static void emit_classes(const std::vector<Term>& group, Eq equal, ConfirmMethod method, SearchReport& report) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        if (equal(i, j)) report.identities.push_back({group[i], group[j], method});
      }
    }
  }

  Integer value_at(const Term& t, const Integer& base) {
    const bool cached = cache_ != nullptr && base == cache_->base();
    const std::string text = cached ? render(t) : std::string{};
    if (cached) {
      if (const auto* e = cache_->find(text)) return e->value;
    }
    Integer v = fingerprint_value(t, base);
    if (cached) {
      const Invariants inv = invariants(t);
      cache_->insert(text, {inv.dege, inv.coeff_sum, v});
    }
    return v;
  }

  const SearchOptions& options_;
  VarIndex numVars_;
  Integer base_;
  FingerprintCache* cache_;
};

}  // namespace

SearchReport find_identities(std::size_t maxLeaves, VarIndex numVars, const SearchOptions& options) {
  if (maxLeaves == 0) throw std::invalid_argument("maxLeaves must be positive");
  if (numVars == 0) throw std::invalid_argument("numVars must be positive");

  SearchReport report;
  report.max_leaves = maxLeaves;
  report.num_vars = numVars;
  report.terms_total = term_count_up_to(maxLeaves, numVars);
  while (report.covered_leaves < maxLeaves &&
         term_count_up_to(report.covered_leaves + 1, numVars) <= options.max_terms) {
    ++report.covered_leaves;
  }
  report.complete = report.covered_leaves == maxLeaves;
  if (report.covered_leaves == 0) {
    report.base = 2;
    return report;
  }

  const std::vector<Term> terms = enumerate_terms(report.covered_leaves, numVars);
  report.terms_covered = terms.size();

  // Level-by-level invariants; lower levels are kept for composing the next.
  std::vector<Key> keys(terms.size());
  std::vector<InvariantSet> stored(terms.size());
  std::vector<Integer> levelMax(terms.size());
  std::unordered_map<Term, std::size_t> index;
  std::size_t begin = 0;
  Integer maxCoeffSum = 1;
  while (begin < terms.size()) {
    const std::size_t leaves = terms[begin].leaf_count();
    std::size_t end = begin;
    while (end < terms.size() && terms[end].leaf_count() == leaves) ++end;
    const bool keep = leaves < report.covered_leaves;
    detail::parallel_for(end - begin, options.workers, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = begin + lo; i < begin + hi; ++i) {
        const Term& t = terms[i];
        InvariantSet s = t.is_leaf() ? leaf_set(t.var_index(), numVars)
                                     : compose_sets(stored[index.at(t.left())], stored[index.at(t.right())]);
        keys[i] = key_of(s);
        levelMax[i] = s[0].coeff_sum;
        if (keep) stored[i] = std::move(s);
      }
    });
    for (std::size_t i = begin; i < end; ++i) {
      if (levelMax[i] > maxCoeffSum) maxCoeffSum = levelMax[i];
      levelMax[i] = 0;
      if (keep) index.emplace(terms[i], i);
    }
    begin = end;
  }
  stored.clear();
  index.clear();
  report.base = maxCoeffSum + 1;

  std::optional<FingerprintCache> cache;
  if (options.cache_path && numVars == 1) {
    cache = FingerprintCache::load(*options.cache_path);
    if (!cache || cache->base() != report.base) cache.emplace(report.base);
  }

  std::vector<std::size_t> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(keys[a], a) < std::tie(keys[b], b);
  });

  Confirmer confirmer(options, numVars, report.base, cache ? &*cache : nullptr);
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && keys[order[hi]] == keys[order[lo]]) ++hi;
    if (hi - lo > 1) {
      ++report.candidate_groups;
      // The key is a digest; split by the exact invariants first.
      std::vector<std::pair<InvariantSet, std::size_t>> members;
      for (std::size_t k = lo; k < hi; ++k) members.emplace_back(invariant_set(terms[order[k]], numVars), order[k]);
      for (std::size_t a = 0; a < members.size(); ++a) {
        if (members[a].second == SIZE_MAX) continue;
        std::vector<Term> group{terms[members[a].second]};
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          if (members[b].second != SIZE_MAX && members[b].first == members[a].first) {
            group.push_back(terms[members[b].second]);
            members[b].second = SIZE_MAX;
          }
        }
        if (group.size() > 1) confirmer.resolve(group, report);
      }
    }
    lo = hi;
  }

  if (cache) {
    std::uint64_t bits = 0;
    const std::uint64_t baseBits = mpz_sizeinbase(report.base.get_mpz_t(), 2);
    for (const Key& k : keys) {
      bits += k.dege * baseBits;
      if (bits > kFullCacheBits) break;
    }
    if (bits <= kFullCacheBits) {
      for (const Term& t : terms) {
        const std::string text = render(t);
        if (cache->find(text)) continue;
        const Invariants inv = invariants(t);
        cache->insert(text, {inv.dege, inv.coeff_sum, fingerprint_value(t, report.base)});
      }
    }
    cache->save(*options.cache_path);
  }

  std::sort(report.identities.begin(), report.identities.end(), [](const Identity& x, const Identity& y) {
    if (auto c = canonical_compare(x.a, y.a); c != 0) return c < 0;
    return canonical_compare(x.b, y.b) < 0;
  });
  std::sort(report.unresolved.begin(), report.unresolved.end(), [](const auto& x, const auto& y) {
    if (auto c = canonical_compare(x.first, y.first); c != 0) return c < 0;
    return canonical_compare(x.second, y.second) < 0;
  });
  return report;
}

GroupVerdict confirm_group(const std::vector<Term>& group, VarIndex numVars, const Integer& base,
                           const SearchOptions& options) {
  for (const Term& t : group) {
    if (base <= coeff_sum_fast(t)) throw UnfaithfulBase("confirmation base does not exceed a coefficient sum");
  }
  SearchReport scratch;
  Confirmer(options, numVars, base, nullptr).resolve(group, scratch);
  return {std::move(scratch.identities), std::move(scratch.unresolved)};
}

std::string to_text(const SearchReport& report) {
  std::ostringstream out;
  out << report.identities.size() << (report.identities.size() == 1 ? " identity" : " identities")
      << " found; certificate covers " << report.terms_covered << " terms\n";
  if (!report.complete) {
    out << "partial: budget reached, only terms with at most " << report.covered_leaves << " of " << report.max_leaves
        << " leaves (" << report.terms_covered << " of " << report.terms_total << " terms) were examined\n";
  }
  for (const Identity& id : report.identities) {
    out << render(id.a, report.num_vars) << " = " << render(id.b, report.num_vars) << '\n';
  }
  for (const auto& [a, b] : report.unresolved) {
    out << "unresolved: " << render(a, report.num_vars) << " ? " << render(b, report.num_vars) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const SearchReport& report) {
  nlohmann::json j;
  j["maxLeaves"] = report.max_leaves;
  j["coveredLeaves"] = report.covered_leaves;
  j["numVars"] = report.num_vars;
  j["termsTotal"] = report.terms_total;
  j["termsCovered"] = report.terms_covered;
  j["complete"] = report.complete;
  j["base"] = report.base.get_str();
  j["candidateGroups"] = report.candidate_groups;
  auto ids = nlohmann::json::array();
  for (const Identity& id : report.identities) {
    ids.push_back({{"a", render(id.a, report.num_vars)},
                   {"b", render(id.b, report.num_vars)},
                   {"method", id.method == ConfirmMethod::Expansion ? "expansion" : "three-bases"}});
  }
  j["identities"] = std::move(ids);
  auto unresolved = nlohmann::json::array();
  for (const auto& [a, b] : report.unresolved) {
    unresolved.push_back({render(a, report.num_vars), render(b, report.num_vars)});
  }
  j["unresolved"] = std::move(unresolved);
  return j;
}

}  // namespace mil
