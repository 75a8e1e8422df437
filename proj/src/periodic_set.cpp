#include "cantorlab/periodic_set.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "cantorlab/error.hpp"

namespace cantorlab {

namespace {

constexpr std::uint64_t kMaxPeriod = std::uint64_t{1} << 24;

std::vector<std::uint64_t> parse_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc() || p != item.data() + item.size())
        throw Error(ErrorKind::Parse, "bad number '" + std::string(item) + "' in set spec");
      out.push_back(v);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  std::uint64_t l = std::lcm(a, b);
  if (l > kMaxPeriod) throw Error(ErrorKind::BoundExceeded, "combined period exceeds " + std::to_string(kMaxPeriod));
  return l;
}

}  // namespace

EventuallyPeriodicSet EventuallyPeriodicSet::make(std::uint64_t threshold, std::vector<std::uint64_t> exceptions,
                                                  std::uint64_t period, std::vector<std::uint64_t> residues) {
  if (period == 0) throw Error(ErrorKind::Domain, "period must be positive");
  if (period > kMaxPeriod) throw Error(ErrorKind::BoundExceeded, "period too large");
  std::vector<bool> pattern(period, false);
  for (auto r : residues) {
    if (r >= period) throw Error(ErrorKind::Domain, "residue " + std::to_string(r) + " not below period");
    pattern[r] = true;
  }
  std::sort(exceptions.begin(), exceptions.end());
  exceptions.erase(std::unique(exceptions.begin(), exceptions.end()), exceptions.end());
  for (auto e : exceptions)
    if (e >= threshold) throw Error(ErrorKind::Domain, "exception " + std::to_string(e) + " not below threshold");

  std::uint64_t best = period;
  for (std::uint64_t q = 1; q < period; ++q) {
    if (period % q) continue;
    bool ok = true;
    for (std::uint64_t i = q; i < period && ok; ++i) ok = pattern[i] == pattern[i % q];
    if (ok) {
      best = q;
      break;
    }
  }

  EventuallyPeriodicSet s;
  s.period_ = best;
  for (std::uint64_t r = 0; r < best; ++r)
    if (pattern[r]) s.residues_.push_back(r);
  s.threshold_ = threshold;
  s.exceptions_ = std::move(exceptions);
  while (s.threshold_ > 0) {
    std::uint64_t k = s.threshold_ - 1;
    bool member = !s.exceptions_.empty() && s.exceptions_.back() == k;
    if (member != s.in_tail(k)) break;
    if (member) s.exceptions_.pop_back();
    --s.threshold_;
  }
  return s;
}

EventuallyPeriodicSet EventuallyPeriodicSet::finite(std::vector<std::uint64_t> members) {
  std::uint64_t t = 0;
  for (auto m : members) t = std::max(t, m + 1);
  return make(t, std::move(members), 1, {});
}

EventuallyPeriodicSet EventuallyPeriodicSet::residue_class(std::uint64_t period, std::uint64_t residue) {
  return make(0, {}, period, {residue % period});
}

EventuallyPeriodicSet EventuallyPeriodicSet::tail_from(std::uint64_t from) { return make(from, {}, 1, {0}); }

bool EventuallyPeriodicSet::in_tail(std::uint64_t k) const {
  return std::binary_search(residues_.begin(), residues_.end(), k % period_);
}

bool EventuallyPeriodicSet::contains(std::uint64_t k) const {
  if (k < threshold_) return std::binary_search(exceptions_.begin(), exceptions_.end(), k);
  return in_tail(k);
}

std::optional<std::uint64_t> EventuallyPeriodicSet::next_member(std::uint64_t k) const {
  if (k < threshold_) {
    auto it = std::lower_bound(exceptions_.begin(), exceptions_.end(), k);
    if (it != exceptions_.end()) return *it;
    k = threshold_;
  }
  if (residues_.empty()) return std::nullopt;
  for (std::uint64_t i = 0; i < period_; ++i)
    if (in_tail(k + i)) return k + i;
  return std::nullopt;
}

EventuallyPeriodicSet EventuallyPeriodicSet::complement() const {
  std::vector<std::uint64_t> ex;
  for (std::uint64_t k = 0; k < threshold_; ++k)
    if (!contains(k)) ex.push_back(k);
  std::vector<std::uint64_t> res;
  for (std::uint64_t r = 0; r < period_; ++r)
    if (!in_tail(r)) res.push_back(r);
  return make(threshold_, std::move(ex), period_, std::move(res));
}

EventuallyPeriodicSet EventuallyPeriodicSet::intersect(const EventuallyPeriodicSet& o) const {
  std::uint64_t t = std::max(threshold_, o.threshold_);
  std::uint64_t p = checked_lcm(period_, o.period_);
  std::vector<std::uint64_t> ex, res;
  for (std::uint64_t k = 0; k < t; ++k)
    if (contains(k) && o.contains(k)) ex.push_back(k);
  for (std::uint64_t r = 0; r < p; ++r)
    if (in_tail(r) && o.in_tail(r)) res.push_back(r);
  return make(t, std::move(ex), p, std::move(res));
}

EventuallyPeriodicSet EventuallyPeriodicSet::unite(const EventuallyPeriodicSet& o) const {
  return complement().intersect(o.complement()).complement();
}

bool EventuallyPeriodicSet::subset_of(const EventuallyPeriodicSet& o) const {
  return intersect(o.complement()) == EventuallyPeriodicSet::empty();
}

EventuallyPeriodicSet EventuallyPeriodicSet::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "all" || text == "omega") return all();
  if (text == "empty" || text == "none") return empty();
  if (text == "evens") return residue_class(2, 0);
  if (text == "odds") return residue_class(2, 1);
  if (text.starts_with("from:")) {
    auto v = parse_list(text.substr(5));
    if (v.size() != 1) throw Error(ErrorKind::Parse, "from: takes one number");
    return tail_from(v[0]);
  }
  if (text.starts_with("finite:")) return finite(parse_list(text.substr(7)));
  if (text.starts_with("mod")) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorKind::Parse, "mod<p>:<residues> expected");
    auto p = parse_list(text.substr(3, colon - 3));
    if (p.size() != 1) throw Error(ErrorKind::Parse, "bad period in '" + std::string(text) + "'");
    auto res = parse_list(text.substr(colon + 1));
    for (auto& r : res)
      if (p[0] > 0) r %= p[0];
    return make(0, {}, p[0], std::move(res));
  }
  if (text.starts_with("eps:")) {
    std::uint64_t t = 0, p = 1;
    std::vector<std::uint64_t> ex, res;
    std::string_view rest = text.substr(4);
    while (!rest.empty()) {
      auto semi = rest.find(';');
      std::string_view field = rest.substr(0, semi);
      auto eq = field.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorKind::Parse, "bad field in '" + std::string(text) + "'");
      std::string_view key = field.substr(0, eq);
      auto values = parse_list(field.substr(eq + 1));
      if (key == "T") {
        if (values.size() != 1) throw Error(ErrorKind::Parse, "T takes one number");
        t = values[0];
      } else if (key == "p") {
        if (values.size() != 1) throw Error(ErrorKind::Parse, "p takes one number");
        p = values[0];
      } else if (key == "E") {
        ex = values;
      } else if (key == "R") {
        res = values;
      } else {
        throw Error(ErrorKind::Parse, "unknown field '" + std::string(key) + "'");
      }
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
    return make(t, std::move(ex), p, std::move(res));
  }
  throw Error(ErrorKind::Parse, "unrecognized set spec '" + std::string(text) + "'");
}

std::string EventuallyPeriodicSet::to_string() const {
  if (*this == all()) return "all";
  if (*this == empty()) return "empty";
  if (is_finite()) return "finite:" + join(exceptions_);
  if (threshold_ == 0) return "mod" + std::to_string(period_) + ":" + join(residues_);
  return "eps:T=" + std::to_string(threshold_) + ";E=" + join(exceptions_) + ";p=" + std::to_string(period_) +
         ";R=" + join(residues_);
}

}  // namespace cantorlab
