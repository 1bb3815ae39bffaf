#include "mil/fingerprint_cache.hpp"

#include <fstream>
#include <sstream>

namespace mil {

namespace {

constexpr std::string_view kHeader = "MIL1 base=";

Integer parse_integer(const std::string& text, int radix, std::size_t line) {
  Integer v;
  if (text.empty() || v.set_str(text, radix) != 0 || sgn(v) < 0) {
    throw CacheFormatError("bad number on cache line " + std::to_string(line));
  }
  return v;
}

}  // namespace

std::optional<FingerprintCache> FingerprintCache::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || !line.starts_with(kHeader)) throw CacheFormatError("missing MIL1 header in " + path);
  FingerprintCache cache(parse_integer(line.substr(kHeader.size()), 10, 1));
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string term, dege, sum, value;
    if (!std::getline(fields, term, '\t') || !std::getline(fields, dege, '\t') || !std::getline(fields, sum, '\t') ||
        !std::getline(fields, value)) {
      throw CacheFormatError("expected 4 tab-separated fields on cache line " + std::to_string(n));
    }
    Entry e;
    e.dege = parse_integer(dege, 10, n).get_ui();
    e.coeff_sum = parse_integer(sum, 10, n);
    e.value = parse_integer(value, 16, n);
    cache.entries_.insert_or_assign(std::move(term), std::move(e));
  }
  return cache;
}

void FingerprintCache::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write cache file " + path);
  out << kHeader << base_.get_str() << '\n';
  for (const auto& [term, e] : entries_) {
    out << term << '\t' << e.dege << '\t' << e.coeff_sum.get_str() << '\t' << e.value.get_str(16) << '\n';
  }
  if (!out) throw std::runtime_error("failed writing cache file " + path);
}

const FingerprintCache::Entry* FingerprintCache::find(const std::string& term) const {
  auto it = entries_.find(term);
  return it == entries_.end() ? nullptr : &it->second;
}

void FingerprintCache::insert(const std::string& term, Entry entry) {
  entries_.insert_or_assign(term, std::move(entry));
}

}  // namespace mil
