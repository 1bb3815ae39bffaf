#include "mil/term.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <mutex>

namespace mil {

namespace {

std::size_t mix(std::size_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

std::shared_ptr<const Term::Node> make_leaf(VarIndex index) {
  auto node = std::make_shared<Term::Node>();
  node->var = index;
  node->leaves = 1;
  node->hash = mix(0x9e3779b97f4a7c15ULL + index);
  node->max_var = index;
  return node;
}

std::shared_ptr<const Term::Node> leaf_node(VarIndex index) {
  // Small indices are shared; the common case is x itself.
  static const std::vector<std::shared_ptr<const Term::Node>> cache = [] {
    std::vector<std::shared_ptr<const Term::Node>> v;
    for (VarIndex i = 0; i <= 16; ++i) v.push_back(make_leaf(i));
    return v;
  }();
  if (index < cache.size()) return cache[index];
  return make_leaf(index);
}

}  // namespace

// Path ----------------------------------------------------------------------

Path::Path(std::string moves) : moves_(std::move(moves)) {
  for (char c : moves_) {
    if (c != 'L' && c != 'R') throw std::invalid_argument("path may contain only 'L' and 'R': " + moves_);
  }
}

Path Path::child(Move m) const {
  Path p = *this;
  p.moves_.push_back(static_cast<char>(m));
  return p;
}

Path Path::parent() const {
  if (moves_.empty()) throw std::out_of_range("root has no parent");
  Path p = *this;
  p.moves_.pop_back();
  return p;
}

Path Path::sibling() const {
  if (moves_.empty()) throw std::out_of_range("root has no sibling");
  Path p = *this;
  p.moves_.back() = p.moves_.back() == 'L' ? 'R' : 'L';
  return p;
}

bool Path::is_prefix_of(const Path& other) const noexcept {
  return moves_.size() <= other.moves_.size() && std::equal(moves_.begin(), moves_.end(), other.moves_.begin());
}

// Term ----------------------------------------------------------------------

Term::Term() : node_(leaf_node(1)) {}

Term Term::var(VarIndex index) {
  if (index == 0) throw std::invalid_argument("variable indices are 1-based");
  return Term(leaf_node(index));
}

Term Term::apply(const Term& left, const Term& right) {
  auto node = std::make_shared<Node>();
  node->left = left;
  node->right = right;
  node->leaves = left.leaf_count() + right.leaf_count();
  node->hash = mix(left.hash() * 0x100000001b3ULL ^ mix(right.hash() + 0x632be59bd9b4e019ULL));
  node->max_var = std::max(left.max_var(), right.max_var());
  return Term(std::move(node));
}

bool Term::is_leaf() const noexcept { return node_->var != 0; }

VarIndex Term::var_index() const {
  if (!is_leaf()) throw std::logic_error("var_index() on an application");
  return node_->var;
}

const Term& Term::left() const {
  if (is_leaf()) throw std::logic_error("left() on a leaf");
  return node_->left;
}

const Term& Term::right() const {
  if (is_leaf()) throw std::logic_error("right() on a leaf");
  return node_->right;
}

std::size_t Term::leaf_count() const noexcept { return node_->leaves; }
std::size_t Term::hash() const noexcept { return node_->hash; }
VarIndex Term::max_var() const noexcept { return node_->max_var; }

const Term& Term::at(const Path& path) const {
  const Term* cur = this;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (cur->is_leaf()) throw std::out_of_range("path '" + path.str() + "' leaves the term");
    cur = path[i] == Path::Move::Left ? &cur->left() : &cur->right();
  }
  return *cur;
}

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->leaves != b.node_->leaves) return false;
  if (a.is_leaf() || b.is_leaf()) return a.node_->var == b.node_->var;
  return a.node_->left == b.node_->left && a.node_->right == b.node_->right;
}

// Parsing and printing -------------------------------------------------------

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, VarIndex numVars) : text_(text), numVars_(numVars) {}

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  Term term() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == 'f') {
      ++pos_;
      expect('(');
      Term l = term();
      expect(',');
      Term r = term();
      expect(')');
      return Term::apply(l, r);
    }
    if (c == 'x') {
      const std::size_t start = pos_++;
      std::uint64_t index = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        index = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          index = index * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
          if (index > std::numeric_limits<VarIndex>::max()) throw ParseError("variable index too large", start);
          ++pos_;
        }
      }
      if (index == 0 || index > numVars_) {
        throw ParseError("variable index " + std::to_string(index) + " outside 1.." + std::to_string(numVars_), start);
      }
      return Term::var(static_cast<VarIndex>(index));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  VarIndex numVars_;
  std::size_t pos_ = 0;
};

void render_into(const Term& t, bool multi, std::string& out) {
  if (t.is_leaf()) {
    out.push_back('x');
    if (multi) out += std::to_string(t.var_index());
    return;
  }
  out += "f(";
  render_into(t.left(), multi, out);
  out.push_back(',');
  render_into(t.right(), multi, out);
  out.push_back(')');
}

void positions_into(const Term& t, std::uint32_t depth, std::vector<VarPosition>& out) {
  if (t.is_leaf()) {
    out.push_back({t.var_index(), depth});
    return;
  }
  positions_into(t.left(), depth + 1, out);
  positions_into(t.right(), depth + 1, out);
}

}  // namespace

Term parse_term(std::string_view text, VarIndex numVars) {
  if (numVars == 0) throw std::invalid_argument("numVars must be positive");
  return Parser(text, numVars).parse();
}

std::string render(const Term& t, VarIndex numVars) {
  std::string out;
  out.reserve(t.leaf_count() * 6);
  render_into(t, std::max(numVars, t.max_var()) > 1, out);
  return out;
}

std::vector<VarPosition> variable_positions(const Term& t) {
  std::vector<VarPosition> out;
  out.reserve(t.leaf_count());
  positions_into(t, 0, out);
  return out;
}

// Ordering and enumeration ---------------------------------------------------

namespace {

std::strong_ordering shape_compare(const Term& a, const Term& b) {
  if (auto c = a.leaf_count() <=> b.leaf_count(); c != 0) return c;
  if (a.is_leaf()) return std::strong_ordering::equal;
  // Larger left subtree first.
  if (auto c = b.left().leaf_count() <=> a.left().leaf_count(); c != 0) return c;
  if (auto c = shape_compare(a.left(), b.left()); c != 0) return c;
  return shape_compare(a.right(), b.right());
}

void collect_vars(const Term& t, std::vector<VarIndex>& out) {
  if (t.is_leaf()) {
    out.push_back(t.var_index());
    return;
  }
  collect_vars(t.left(), out);
  collect_vars(t.right(), out);
}

Term instantiate(const Term& shape, const std::vector<VarIndex>& vars, std::size_t& next) {
  if (shape.is_leaf()) return Term::var(vars[next++]);
  Term l = instantiate(shape.left(), vars, next);
  Term r = instantiate(shape.right(), vars, next);
  return Term::apply(l, r);
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace

std::strong_ordering canonical_compare(const Term& a, const Term& b) {
  if (auto c = shape_compare(a, b); c != 0) return c;
  std::vector<VarIndex> va, vb;
  collect_vars(a, va);
  collect_vars(b, vb);
  return va <=> vb;
}

const std::vector<Term>& shapes(std::size_t leaves) {
  if (leaves == 0) throw std::invalid_argument("shapes need at least one leaf");
  static std::mutex mutex;
  static std::vector<std::unique_ptr<std::vector<Term>>> table;
  std::lock_guard lock(mutex);
  while (table.size() < leaves) {
    const std::size_t n = table.size() + 1;
    auto level = std::make_unique<std::vector<Term>>();
    if (n == 1) {
      level->push_back(Term{});
    } else {
      for (std::size_t k = n - 1; k >= 1; --k) {
        for (const Term& a : *table[k - 1]) {
          for (const Term& b : *table[n - k - 1]) level->push_back(Term::apply(a, b));
        }
      }
    }
    table.push_back(std::move(level));
  }
  return *table[leaves - 1];
}

std::uint64_t term_count(std::size_t leaves, VarIndex numVars) {
  if (leaves == 0) return 0;
  // Catalan(leaves - 1) by the convolution recurrence.
  std::vector<std::uint64_t> catalan(leaves, 0);
  catalan[0] = 1;
  for (std::size_t n = 1; n < leaves; ++n) {
    for (std::size_t k = 0; k < n; ++k) catalan[n] = sat_add(catalan[n], sat_mul(catalan[k], catalan[n - 1 - k]));
  }
  std::uint64_t count = catalan[leaves - 1];
  for (std::size_t i = 0; i < leaves; ++i) count = sat_mul(count, numVars);
  return count;
}

std::uint64_t term_count_up_to(std::size_t maxLeaves, VarIndex numVars) {
  std::uint64_t total = 0;
  for (std::size_t l = 1; l <= maxLeaves; ++l) total = sat_add(total, term_count(l, numVars));
  return total;
}

void for_each_term(std::size_t maxLeaves, VarIndex numVars, const std::function<bool(const Term&)>& visit) {
  if (numVars == 0) throw std::invalid_argument("numVars must be positive");
  for (std::size_t l = 1; l <= maxLeaves; ++l) {
    for (const Term& shape : shapes(l)) {
      if (numVars == 1) {
        if (!visit(shape)) return;
        continue;
      }
      std::vector<VarIndex> vars(l, 1);
      while (true) {
        std::size_t next = 0;
        if (!visit(instantiate(shape, vars, next))) return;
        // Lexicographic successor of the index tuple.
        std::size_t i = l;
        while (i > 0 && vars[i - 1] == numVars) vars[--i] = 1;
        if (i == 0) break;
        ++vars[i - 1];
      }
    }
  }
}

std::vector<Term> enumerate_terms(std::size_t maxLeaves, VarIndex numVars) {
  std::vector<Term> out;
  for_each_term(maxLeaves, numVars, [&](const Term& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

// Substitution and traversal ---------------------------------------------------

Term substitute(const Term& t, VarIndex target, const Term& replacement) {
  if (t.is_leaf()) return t.var_index() == target ? replacement : t;
  if (t.max_var() < target) return t;
  Term l = substitute(t.left(), target, replacement);
  Term r = substitute(t.right(), target, replacement);
  if (l == t.left() && r == t.right()) return t;
  return Term::apply(l, r);
}

Term substitute_all(const Term& t, const std::vector<Term>& images) {
  if (t.is_leaf()) {
    const VarIndex v = t.var_index();
    return v <= images.size() ? images[v - 1] : t;
  }
  return Term::apply(substitute_all(t.left(), images), substitute_all(t.right(), images));
}

Term collapse(const Term& t) {
  if (t.max_var() <= 1) return t;
  if (t.is_leaf()) return Term{};
  return Term::apply(collapse(t.left()), collapse(t.right()));
}

namespace {

void walk(const Term& t, Path& path, const std::function<void(const Path&, const Term&)>& visit) {
  visit(path, t);
  if (t.is_leaf()) return;
  Path l = path.child(Path::Move::Left);
  walk(t.left(), l, visit);
  Path r = path.child(Path::Move::Right);
  walk(t.right(), r, visit);
}

Term replace_rec(const Term& t, const Path& path, std::size_t depth, const Term& replacement) {
  if (depth == path.size()) return replacement;
  if (t.is_leaf()) throw std::out_of_range("path '" + path.str() + "' leaves the term");
  if (path[depth] == Path::Move::Left) return Term::apply(replace_rec(t.left(), path, depth + 1, replacement), t.right());
  return Term::apply(t.left(), replace_rec(t.right(), path, depth + 1, replacement));
}

}  // namespace

void for_each_node(const Term& t, const std::function<void(const Path&, const Term&)>& visit) {
  Path root;
  walk(t, root, visit);
}

Term replace_at(const Term& t, const Path& path, const Term& replacement) {
  return replace_rec(t, path, 0, replacement);
}

}  // namespace mil
