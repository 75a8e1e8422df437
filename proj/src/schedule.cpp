#include "cantorlab/schedule.hpp"

#include <bit>
#include <charconv>

#include "cantorlab/error.hpp"

namespace cantorlab {

namespace {

void check_unit(const Dyadic& a) {
  if (a < Dyadic(0) || a > Dyadic(1))
    throw Error(ErrorKind::Domain, "schedule value " + a.to_string() + " outside [0,1]");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

Schedule Schedule::constant(Dyadic a) {
  check_unit(a);
  Schedule s;
  s.kind_ = Kind::Constant;
  s.value_ = std::move(a);
  return s;
}

Schedule Schedule::power_decay() {
  Schedule s;
  s.kind_ = Kind::PowerDecay;
  return s;
}

Schedule Schedule::geometric(std::uint32_t c) {
  Schedule s;
  s.kind_ = Kind::Geometric;
  s.offset_ = c;
  return s;
}

Schedule Schedule::explicit_list(std::vector<Dyadic> head, std::optional<Schedule> tail) {
  for (const auto& a : head) check_unit(a);
  Schedule s;
  s.kind_ = Kind::Explicit;
  s.head_ = std::move(head);
  if (tail) s.tail_ = std::make_shared<const Schedule>(std::move(*tail));
  return s;
}

Dyadic Schedule::at(std::uint64_t k) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::PowerDecay:
      return Dyadic::pow2(-static_cast<std::int64_t>(std::bit_width(k + 1) - 1));
    case Kind::Geometric:
      return Dyadic::pow2(-static_cast<std::int64_t>(k) - offset_);
    case Kind::Explicit:
      if (k < head_.size()) return head_[k];
      if (tail_) return tail_->at(k);
      throw Error(ErrorKind::Domain, "explicit schedule has no value at index " + std::to_string(k));
  }
  return Dyadic(0);
}

bool Schedule::has_tail_rule() const { return kind_ != Kind::Explicit || tail_ != nullptr; }

std::optional<std::uint64_t> Schedule::constant_from() const {
  switch (kind_) {
    case Kind::Constant:
      return 0;
    case Kind::PowerDecay:
    case Kind::Geometric:
      return std::nullopt;
    case Kind::Explicit: {
      if (!tail_) return std::nullopt;
      auto t = tail_->constant_from();
      if (!t) return std::nullopt;
      std::uint64_t from = std::max<std::uint64_t>(*t, head_.size());
      Dyadic v = tail_->at(from);
      while (from > 0 && at(from - 1) == v) --from;
      return from;
    }
  }
  return std::nullopt;
}

std::optional<std::uint64_t> Schedule::open_from() const {
  switch (kind_) {
    case Kind::Constant:
      return std::nullopt;
    case Kind::PowerDecay:
      return 1;
    case Kind::Geometric:
      return offset_ == 0 ? 1 : 0;
    case Kind::Explicit: {
      if (!tail_) return std::nullopt;
      auto t = tail_->open_from();
      if (!t) return std::nullopt;
      return std::max<std::uint64_t>(*t, head_.size());
    }
  }
  return std::nullopt;
}

Schedule Schedule::parse(std::string_view text) {
  text = trim(text);
  auto args = [&](std::string_view prefix) -> std::string_view {
    if (!text.starts_with(prefix) || text.back() != ')')
      throw Error(ErrorKind::Parse, "bad schedule '" + std::string(text) + "'");
    return text.substr(prefix.size(), text.size() - prefix.size() - 1);
  };
  if (text == "power") return power_decay();
  if (text.starts_with("const(")) return constant(Dyadic::parse(args("const(")));
  if (text.starts_with("geom(")) {
    std::string_view a = trim(args("geom("));
    std::uint32_t c = 0;
    auto [p, ec] = std::from_chars(a.data(), a.data() + a.size(), c);
    if (ec != std::errc() || p != a.data() + a.size())
      throw Error(ErrorKind::Parse, "bad geometric offset in '" + std::string(text) + "'");
    return geometric(c);
  }
  if (text.starts_with("explicit(")) {
    std::string_view body = args("explicit(");
    std::optional<Schedule> tail;
    auto semi = body.find(";tail=");
    if (semi != std::string_view::npos) {
      tail = parse(body.substr(semi + 6));
      body = body.substr(0, semi);
    }
    std::vector<Dyadic> head;
    while (!trim(body).empty()) {
      auto comma = body.find(',');
      head.push_back(Dyadic::parse(body.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return explicit_list(std::move(head), std::move(tail));
  }
  throw Error(ErrorKind::Parse, "unrecognized schedule '" + std::string(text) + "'");
}

std::string Schedule::to_string() const {
  switch (kind_) {
    case Kind::Constant:
      return "const(" + value_.to_string() + ")";
    case Kind::PowerDecay:
      return "power";
    case Kind::Geometric:
      return "geom(" + std::to_string(offset_) + ")";
    case Kind::Explicit: {
      std::string s = "explicit(";
      for (std::size_t i = 0; i < head_.size(); ++i) {
        if (i) s += ',';
        s += head_[i].to_string();
      }
      if (tail_) s += ";tail=" + tail_->to_string();
      return s + ")";
    }
  }
  return {};
}

bool operator==(const Schedule& a, const Schedule& b) {
  if (a.kind_ != b.kind_ || a.value_ != b.value_ || a.offset_ != b.offset_ || a.head_ != b.head_) return false;
  if (!a.tail_ || !b.tail_) return !a.tail_ && !b.tail_;
  return *a.tail_ == *b.tail_;
}

}  // namespace cantorlab
