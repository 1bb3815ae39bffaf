#pragma once

// f-expressions: binary trees over the single symbol f with variable leaves.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mil {

using VarIndex = std::uint32_t;

class Term;

// Root-to-node address. Each character is 'L' or 'R'; the root is the empty path.
class Path {
 public:
  enum class Move : char { Left = 'L', Right = 'R' };

  Path() = default;
  explicit Path(std::string moves);

  static Path root() { return Path{}; }

  [[nodiscard]] bool is_root() const noexcept { return moves_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return moves_.size(); }
  [[nodiscard]] Move operator[](std::size_t i) const { return static_cast<Move>(moves_[i]); }
  [[nodiscard]] Move back() const { return static_cast<Move>(moves_.back()); }

  [[nodiscard]] Path child(Move m) const;
  [[nodiscard]] Path parent() const;
  [[nodiscard]] Path sibling() const;
  [[nodiscard]] bool is_prefix_of(const Path& other) const noexcept;

  // "LRL" form; the root renders as the empty string.
  [[nodiscard]] const std::string& str() const noexcept { return moves_; }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;

 private:
  std::string moves_;
};

class Term {
 public:
  struct Node;

  // The bare variable x (index 1).
  Term();

  static Term var(VarIndex index = 1);
  static Term apply(const Term& left, const Term& right);

  [[nodiscard]] bool is_leaf() const noexcept;
  [[nodiscard]] VarIndex var_index() const;
  [[nodiscard]] const Term& left() const;
  [[nodiscard]] const Term& right() const;

  [[nodiscard]] std::size_t leaf_count() const noexcept;
  [[nodiscard]] std::size_t hash() const noexcept;
  [[nodiscard]] VarIndex max_var() const noexcept;

  // Subterm lookup; throws std::out_of_range when the path leaves the tree.
  [[nodiscard]] const Term& at(const Path& path) const;

  friend bool operator==(const Term& a, const Term& b) noexcept;

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  VarIndex var = 0;  // 0 for applications
  Term left{std::shared_ptr<const Node>{}};
  Term right{std::shared_ptr<const Node>{}};
  std::size_t leaves = 1;
  std::size_t hash = 0;
  VarIndex max_var = 0;
};

inline Term f(const Term& a, const Term& b) { return Term::apply(a, b); }
inline Term x() { return Term{}; }

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  [[nodiscard]] std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// term := "x" | "x" digits | "f(" term "," term ")"; whitespace is ignored.
// Throws ParseError on syntax errors and on variable indices outside 1..numVars.
Term parse_term(std::string_view text, VarIndex numVars = 1);

// Canonical text. Single-variable contexts print "x", otherwise "x1", "x2", ...
// The context is max(numVars, t.max_var()).
std::string render(const Term& t, VarIndex numVars = 1);

struct VarPosition {
  VarIndex var;
  std::uint32_t depth;
  friend bool operator==(const VarPosition&, const VarPosition&) = default;
};

// One entry per leaf, left to right.
std::vector<VarPosition> variable_positions(const Term& t);

// Canonical enumeration order: leaf count, then shape (left leaf count
// descending, recursively), then the variable tuple lexicographically.
std::strong_ordering canonical_compare(const Term& a, const Term& b);

// All binary-tree shapes with exactly `leaves` leaves (every leaf is x), in canonical order.
const std::vector<Term>& shapes(std::size_t leaves);

// Catalan(leaves - 1) * numVars^leaves, saturating at UINT64_MAX.
std::uint64_t term_count(std::size_t leaves, VarIndex numVars);
std::uint64_t term_count_up_to(std::size_t maxLeaves, VarIndex numVars);

// Streams every term with 1..maxLeaves leaves once, in canonical order.
// The visitor returns false to stop early.
void for_each_term(std::size_t maxLeaves, VarIndex numVars, const std::function<bool(const Term&)>& visit);
std::vector<Term> enumerate_terms(std::size_t maxLeaves, VarIndex numVars);

// Replaces every occurrence of variable `target` by `replacement`.
Term substitute(const Term& t, VarIndex target, const Term& replacement);
// images[i] replaces variable i+1; variables beyond images.size() are left alone.
Term substitute_all(const Term& t, const std::vector<Term>& images);
// G(x1,...,xn) -> G(x,...,x).
Term collapse(const Term& t);

// Pre-order walk. The callback sees each node with its path.
void for_each_node(const Term& t, const std::function<void(const Path&, const Term&)>& visit);

// Returns t with the subterm at `path` replaced.
Term replace_at(const Term& t, const Path& path, const Term& replacement);

}  // namespace mil

template <>
struct std::hash<mil::Term> {
  std::size_t operator()(const mil::Term& t) const noexcept { return t.hash(); }
};
