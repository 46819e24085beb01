#include <algorithm>
#include <charconv>
#include <string>

#include "pgs/cli.hpp"

namespace pgs::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::uint64_t parse_k(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::BadK, "invalid K value '" + std::string(s) + "'");
  }
  if (v < 2) throw Error(ErrorKind::BadK, "need K >= 2, got " + std::to_string(v));
  return v;
}

}  // namespace

std::vector<BlockCount> parse_k_list(std::string_view text, bool allow_infinite) {
  constexpr std::uint64_t kMaxListed = 1'000'000;
  std::vector<std::uint64_t> finite;
  bool infinite = false;

  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (item == "inf") {
      if (!allow_infinite) throw Error(ErrorKind::BadK, "K = inf is not accepted here");
      infinite = true;
    } else if (const auto dots = item.find(".."); dots != std::string_view::npos) {
      const std::uint64_t lo = parse_k(item.substr(0, dots));
      const std::uint64_t hi = parse_k(item.substr(dots + 2));
      if (lo > hi || hi - lo >= kMaxListed) {
        throw Error(ErrorKind::BadK, "invalid K range '" + std::string(item) + "'");
      }
      for (std::uint64_t k = lo; k <= hi; ++k) finite.push_back(k);
    } else {
      finite.push_back(parse_k(item));
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }

  std::sort(finite.begin(), finite.end());
  finite.erase(std::unique(finite.begin(), finite.end()), finite.end());
  std::vector<BlockCount> out(finite.begin(), finite.end());
  if (infinite) out.push_back(BlockCount::infinite());
  return out;
}

}  // namespace pgs::cli
