#include "mil/poly.hpp"

#include <algorithm>
#include <limits>

namespace mil {

ExpansionCapExceeded::ExpansionCapExceeded(std::size_t estimate, std::size_t cap)
    : std::runtime_error("expansion needs ~" + std::to_string(estimate) + " term products, cap is " +
                         std::to_string(cap)),
      estimate_(estimate),
      cap_(cap) {}

Poly Poly::monomial(Exponent e, Integer c) {
  if (sgn(c) < 0) throw std::invalid_argument("negative coefficient");
  Poly p;
  if (sgn(c) != 0) p.terms_.emplace_back(e, std::move(c));
  return p;
}

Poly Poly::from_terms(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) { return a.first < b.first; });
  Poly p;
  for (auto& [e, c] : terms) {
    if (sgn(c) < 0) throw std::invalid_argument("negative coefficient");
    if (!p.terms_.empty() && p.terms_.back().first == e) {
      p.terms_.back().second += c;
    } else {
      p.terms_.emplace_back(e, std::move(c));
    }
  }
  std::erase_if(p.terms_, [](const Monomial& m) { return sgn(m.second) == 0; });
  return p;
}

Integer Poly::coefficient(Exponent e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const Monomial& m, Exponent v) { return m.first < v; });
  if (it == terms_.end() || it->first != e) return 0;
  return it->second;
}

Exponent Poly::degree() const {
  if (terms_.empty()) throw std::domain_error("degree of the zero polynomial");
  return terms_.back().first;
}

Exponent Poly::order() const {
  if (terms_.empty()) throw std::domain_error("order of the zero polynomial");
  return terms_.front().first;
}

Poly operator+(const Poly& p, const Poly& q) {
  std::vector<Poly::Monomial> out;
  out.reserve(p.term_count() + q.term_count());
  auto a = p.terms().begin(), ae = p.terms().end();
  auto b = q.terms().begin(), be = q.terms().end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == ae || b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return Poly::from_terms(std::move(out));
}

Poly multiply(const Poly& p, const Poly& q, std::size_t cap) {
  if (p.empty() || q.empty()) return {};
  const std::size_t np = p.term_count(), nq = q.term_count();
  const std::size_t estimate =
      np > std::numeric_limits<std::size_t>::max() / nq ? std::numeric_limits<std::size_t>::max() : np * nq;
  if (estimate > cap) throw ExpansionCapExceeded(estimate, cap);

  const Exponent lo = p.order() + q.order();
  const Exponent hi = p.degree() + q.degree();
  const Exponent span = hi - lo + 1;
  std::vector<Poly::Monomial> out;
  if (span <= 4 * estimate + 64) {
    // Dense accumulator over the exponent range.
    std::vector<Integer> acc(span);
    for (const auto& [ea, ca] : p.terms()) {
      for (const auto& [eb, cb] : q.terms()) {
        mpz_addmul(acc[ea + eb - lo].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
      }
    }
    out.reserve(std::min<std::size_t>(span, estimate));
    for (Exponent i = 0; i < span; ++i) {
      if (sgn(acc[i]) != 0) out.emplace_back(lo + i, std::move(acc[i]));
    }
    return Poly::from_terms(std::move(out));
  }
  out.reserve(estimate);
  for (const auto& [ea, ca] : p.terms()) {
    for (const auto& [eb, cb] : q.terms()) out.emplace_back(ea + eb, ca * cb);
  }
  return Poly::from_terms(std::move(out));
}

Poly power(const Poly& p, unsigned k, std::size_t cap) {
  Poly result = Poly::one();
  for (unsigned i = 0; i < k; ++i) result = multiply(result, p, cap);
  return result;
}

Poly scale(const Poly& p, const Integer& c) {
  if (sgn(c) < 0) throw std::invalid_argument("negative scale");
  std::vector<Poly::Monomial> out;
  out.reserve(p.term_count());
  for (const auto& [e, a] : p.terms()) out.emplace_back(e, a * c);
  return Poly::from_terms(std::move(out));
}

Poly subtract_dominated(const Poly& p, const Poly& q) {
  std::vector<Poly::Monomial> out(p.terms());
  for (const auto& [e, c] : q.terms()) {
    auto it = std::lower_bound(out.begin(), out.end(), e, [](const Poly::Monomial& m, Exponent v) { return m.first < v; });
    if (it == out.end() || it->first != e || it->second < c) {
      throw std::domain_error("subtraction would produce a negative coefficient");
    }
    it->second -= c;
  }
  return Poly::from_terms(std::move(out));
}

PolyProfile profile(const Poly& p) {
  if (p.empty()) throw std::domain_error("profile of the zero polynomial");
  Integer sum = 0;
  for (const auto& [e, c] : p.terms()) sum += c;
  return {p.order(), p.degree(), p.terms().back().second, sum};
}

std::strong_ordering lex_compare(const Poly& p, const Poly& q) {
  auto a = p.terms().rbegin(), ae = p.terms().rend();
  auto b = q.terms().rbegin(), be = q.terms().rend();
  for (; a != ae && b != be; ++a, ++b) {
    // A missing exponent on one side means a zero coefficient there.
    if (a->first != b->first) return a->first <=> b->first;
    if (int c = cmp(a->second, b->second); c != 0) return c <=> 0;
  }
  if (a != ae) return std::strong_ordering::greater;
  if (b != be) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

Integer eval_at_base(const Poly& p, const Integer& base) {
  Integer acc = 0;
  if (p.empty()) return acc;
  Integer power;
  auto it = p.terms().rbegin();
  Exponent current = it->first;
  for (; it != p.terms().rend(); ++it) {
    const Exponent gap = current - it->first;
    if (gap > 0) {
      mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), gap);
      acc *= power;
    }
    acc += it->second;
    current = it->first;
  }
  if (current > 0) {
    mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), current);
    acc *= power;
  }
  return acc;
}

std::string to_debug_string(const Poly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += it->second.get_str() + "*x^" + std::to_string(it->first);
  }
  return out;
}

nlohmann::json to_json(const Poly& p) {
  auto arr = nlohmann::json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    arr.push_back(nlohmann::json::array({it->first, it->second.get_str()}));
  }
  return arr;
}

Poly poly_from_json(const nlohmann::json& j) {
  std::vector<Poly::Monomial> terms;
  for (const auto& item : j) terms.emplace_back(item.at(0).get<Exponent>(), Integer(item.at(1).get<std::string>()));
  return Poly::from_terms(std::move(terms));
}

}  // namespace mil
