#include "mil/multivar.hpp"

#include <limits>
#include <stdexcept>

namespace mil {

MPoly MPoly::variable(std::size_t numVars, VarIndex k) {
  if (k == 0 || k > numVars) throw std::invalid_argument("variable x" + std::to_string(k) + " outside 1.." + std::to_string(numVars));
  MPoly p(numVars);
  ExponentVector e(numVars, 0);
  e[k - 1] = 1;
  p.terms_.emplace(std::move(e), 1);
  return p;
}

Integer MPoly::coefficient(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

void MPoly::add_term(const ExponentVector& e, const Integer& c) {
  if (e.size() != numVars_) throw std::invalid_argument("exponent vector width mismatch");
  if (sgn(c) < 0) throw std::invalid_argument("negative coefficient");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
}

MPoly operator+(const MPoly& p, const MPoly& q) {
  if (p.num_vars() != q.num_vars()) throw std::invalid_argument("variable count mismatch");
  MPoly out = p;
  for (const auto& [e, c] : q.terms()) out.add_term(e, c);
  return out;
}

MPoly multiply(const MPoly& p, const MPoly& q, std::size_t cap) {
  if (p.num_vars() != q.num_vars()) throw std::invalid_argument("variable count mismatch");
  const std::size_t np = p.term_count(), nq = q.term_count();
  const std::size_t estimate =
      nq != 0 && np > std::numeric_limits<std::size_t>::max() / nq ? std::numeric_limits<std::size_t>::max() : np * nq;
  if (estimate > cap) throw ExpansionCapExceeded(estimate, cap);
  MPoly out(p.num_vars());
  ExponentVector e(p.num_vars());
  for (const auto& [ea, ca] : p.terms()) {
    for (const auto& [eb, cb] : q.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MPoly mv_evaluate(const Term& t, std::size_t numVars, std::size_t cap) {
  if (t.is_leaf()) return MPoly::variable(numVars, t.var_index());
  const MPoly a = mv_evaluate(t.left(), numVars, cap);
  const MPoly b = mv_evaluate(t.right(), numVars, cap);
  return multiply(a, a, cap) + multiply(multiply(b, b, cap), b, cap);
}

bool mv_e_equivalent(const Term& g, const Term& h, std::size_t numVars, std::size_t cap) {
  if (g == h) return true;
  return mv_evaluate(g, numVars, cap) == mv_evaluate(h, numVars, cap);
}

Poly collapse(const MPoly& p) {
  std::vector<Poly::Monomial> terms;
  terms.reserve(p.term_count());
  for (const auto& [e, c] : p.terms()) {
    Exponent total = 0;
    for (Exponent v : e) total += v;
    terms.emplace_back(total, c);
  }
  return Poly::from_terms(std::move(terms));
}

nlohmann::json to_json(const MPoly& p) {
  auto arr = nlohmann::json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    arr.push_back(nlohmann::json::array({it->first, it->second.get_str()}));
  }
  return arr;
}

SeparationWitness separation_witness(const Term& g, const Term& h) {
  if (collapse(g) != collapse(h)) throw std::invalid_argument("terms do not share a structure");
  const auto pg = variable_positions(g);
  const auto ph = variable_positions(h);
  SeparationWitness w;
  std::size_t j = 0;
  while (j < pg.size() && pg[j].var == ph[j].var) ++j;
  if (j == pg.size()) {
    w.same_structure_same_vars = true;
    return w;
  }
  w.position = j + 1;
  w.var = pg[j].var;
  const VarIndex width = std::max(g.max_var(), h.max_var());
  std::vector<Term> images(width, x());
  images[w.var - 1] = f(x(), x());
  w.g_image = substitute_all(g, images);
  w.h_image = substitute_all(h, images);
  return w;
}

}  // namespace mil
