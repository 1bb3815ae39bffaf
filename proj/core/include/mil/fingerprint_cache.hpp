#pragma once

// On-disk fingerprint store:
//   MIL1 base=<decimal>
//   <term>\t<dege>\t<coeffSum>\t<value hex>
// Entries are only meaningful at the recorded base.

#include <map>
#include <optional>
#include <string>

#include "mil/eval.hpp"

namespace mil {

class CacheFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FingerprintCache {
 public:
  struct Entry {
    Exponent dege = 0;
    Integer coeff_sum;
    Integer value;
  };

  explicit FingerprintCache(Integer base) : base_(std::move(base)) {}

  // nullopt when the file does not exist. Throws CacheFormatError on a malformed file.
  static std::optional<FingerprintCache> load(const std::string& path);
  void save(const std::string& path) const;

  [[nodiscard]] const Integer& base() const noexcept { return base_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const Entry* find(const std::string& term) const;
  void insert(const std::string& term, Entry entry);

 private:
  Integer base_;
  std::map<std::string, Entry> entries_;
};

}  // namespace mil
