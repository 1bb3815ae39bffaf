#include "mil/catalog.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>

namespace mil {

bool is_reachable_degree(Exponent d) {
  if (d == 1) return true;
  if (d == 0 || d % 3 != 0) return false;
  while (d % 3 == 0) d /= 3;
  while (d % 2 == 0) d /= 2;
  return d == 1;
}

DegreeCatalog::DegreeCatalog(Exponent maxDegree, std::size_t materializeLimit) : maxDegree_(maxDegree) {
  if (maxDegree == 0) throw std::invalid_argument("maxDegree must be positive");
  for (Exponent p2 = 1; p2 <= maxDegree; p2 *= 2) {
    for (Exponent d = p2; d <= maxDegree; d *= 3) {
      if (is_reachable_degree(d)) degrees_.push_back(d);
      if (d > maxDegree / 3) break;
    }
    if (p2 > maxDegree / 2) break;
  }
  std::sort(degrees_.begin(), degrees_.end());

  for (Exponent d : degrees_) {
    if (d == 1) {
      counts_[1] = 1;
      members_[1].push_back({Term{}, Invariants::of_x()});
      continue;
    }
    Integer total = 0;
    bool childrenStored = true;
    for (const auto& [dl, dr] : child_degrees(d)) {
      total += counts_.at(dl) * counts_.at(dr);
      childrenStored = childrenStored && members_.contains(dl) && members_.contains(dr);
    }
    counts_[d] = total;
    if (childrenStored && total <= materializeLimit) {
      auto& out = members_[d];
      out.reserve(total.get_ui());
      for_each_pair(d, [&](const CatalogEntry& a, const CatalogEntry& b) {
        out.push_back({Term::apply(a.term, b.term), compose(a.inv, b.inv)});
        return true;
      });
    }
  }
}

std::vector<DegreeCatalog::ChildDegrees> DegreeCatalog::child_degrees(Exponent d) const {
  std::vector<ChildDegrees> out;
  for (Exponent dl : degrees_) {
    if (2 * dl > d) break;
    for (Exponent dr : degrees_) {
      if (3 * dr > d) break;
      if (std::max(2 * dl, 3 * dr) == d) out.push_back({dl, dr});
    }
  }
  return out;
}

Integer DegreeCatalog::count(Exponent d) const {
  if (d > maxDegree_) throw std::out_of_range("degree " + std::to_string(d) + " beyond catalog bound");
  auto it = counts_.find(d);
  return it == counts_.end() ? Integer(0) : it->second;
}

bool DegreeCatalog::materialized(Exponent d) const { return members_.contains(d) || !is_reachable_degree(d); }

const std::vector<CatalogEntry>& DegreeCatalog::members(Exponent d) const {
  static const std::vector<CatalogEntry> empty;
  if (!is_reachable_degree(d) && d <= maxDegree_) return empty;
  auto it = members_.find(d);
  if (it == members_.end()) throw std::out_of_range("degree class " + std::to_string(d) + " is not stored");
  return it->second;
}

bool DegreeCatalog::streamable(Exponent d) const {
  if (d > maxDegree_) return false;
  if (d == 1 || !is_reachable_degree(d)) return true;
  for (const auto& [dl, dr] : child_degrees(d)) {
    if (!members_.contains(dl) || !members_.contains(dr)) return false;
  }
  return true;
}

void DegreeCatalog::for_each_pair(Exponent d,
                                  const std::function<bool(const CatalogEntry&, const CatalogEntry&)>& visit) const {
  if (d == 1 || !is_reachable_degree(d)) return;
  if (d > maxDegree_) throw std::out_of_range("degree " + std::to_string(d) + " beyond catalog bound");
  for (const auto& [dl, dr] : child_degrees(d)) {
    const auto& lefts = members(dl);
    const auto& rights = members(dr);
    for (const auto& a : lefts) {
      for (const auto& b : rights) {
        if (!visit(a, b)) return;
      }
    }
  }
}

void DegreeCatalog::for_each_member(Exponent d, const std::function<bool(const CatalogEntry&)>& visit) const {
  if (auto it = members_.find(d); it != members_.end()) {
    for (const auto& e : it->second) {
      if (!visit(e)) return;
    }
    return;
  }
  for_each_pair(d, [&](const CatalogEntry& a, const CatalogEntry& b) {
    return visit(CatalogEntry{Term::apply(a.term, b.term), compose(a.inv, b.inv)});
  });
}

std::shared_ptr<const DegreeCatalog> shared_catalog(Exponent maxDegree) {
  static std::mutex mutex;
  static std::shared_ptr<const DegreeCatalog> current;
  std::lock_guard lock(mutex);
  if (!current || current->max_degree() < maxDegree) {
    // Grow geometrically so repeated requests do not rebuild every time.
    Exponent target = std::max<Exponent>(maxDegree, 108);
    if (current) target = std::max(target, std::min<Exponent>(2 * current->max_degree(), 256));
    current = std::make_shared<const DegreeCatalog>(std::max(target, maxDegree));
  }
  return current;
}

EquivalentsResult e_equivalents(const Term& t, std::uint64_t budget) {
  const Term shape = collapse(t);
  const Invariants target = invariants(shape);
  const auto catalog = shared_catalog(target.dege);
  EquivalentsResult result;
  result.candidates = catalog->count(target.dege);
  if (result.candidates > budget) return result;
  result.feasible = true;
  if (target.dege == 1) {
    result.terms.push_back(shape);
    return result;
  }
  catalog->for_each_pair(target.dege, [&](const CatalogEntry& a, const CatalogEntry& b) {
    if (!(compose(a.inv, b.inv) == target)) return true;
    const Term candidate = Term::apply(a.term, b.term);
    if (candidate == shape || e_equivalent(candidate, shape)) result.terms.push_back(candidate);
    return true;
  });
  return result;
}

}  // namespace mil
