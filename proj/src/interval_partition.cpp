#include "cantorlab/interval_partition.hpp"

#include <algorithm>
#include <charconv>

#include "cantorlab/error.hpp"

namespace cantorlab {

IntervalPartition::IntervalPartition(std::vector<std::uint64_t> cuts) : cuts_(std::move(cuts)) {
  if (cuts_.empty() || cuts_.front() != 0) throw Error(ErrorKind::Domain, "interval partition must start at 0");
  for (std::size_t i = 1; i < cuts_.size(); ++i)
    if (cuts_[i] <= cuts_[i - 1]) throw Error(ErrorKind::Domain, "interval partition cuts must strictly increase");
}

IntervalPartition IntervalPartition::parse(std::string_view text) {
  std::vector<std::uint64_t> cuts;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size())
      throw Error(ErrorKind::Parse, "bad cut '" + std::string(item) + "'");
    cuts.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return IntervalPartition(std::move(cuts));
}

std::string IntervalPartition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(cuts_[i]);
  }
  return s;
}

std::size_t IntervalPartition::index_of(std::uint64_t k) const {
  auto it = std::upper_bound(cuts_.begin(), cuts_.end(), k);
  return static_cast<std::size_t>(it - cuts_.begin()) - 1;
}

}  // namespace cantorlab
