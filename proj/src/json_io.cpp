#include "cantorlab/json_io.hpp"

#include <cctype>
#include <limits>

#include "cantorlab/error.hpp"

namespace cantorlab {

Json to_json(const Dyadic& d) {
  Json j;
  const BigInt& n = d.numerator();
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max()) {
    j["num"] = n.convert_to<std::int64_t>();
  } else {
    j["num"] = n.str();
  }
  j["exp"] = d.exponent();
  return j;
}

Dyadic dyadic_from_json(const Json& j) {
  if (j.is_string()) return Dyadic::parse(j.get<std::string>());
  if (!j.is_object() || !j.contains("num") || !j.contains("exp"))
    throw Error(ErrorKind::Parse, "dyadic must be {num, exp} or \"p/q\"");
  BigInt num = j["num"].is_string() ? BigInt(j["num"].get<std::string>()) : BigInt(j["num"].get<std::int64_t>());
  return Dyadic(num, j["exp"].get<std::uint32_t>());
}

Json rational_json(const Rational& r) {
  Json j;
  j["num"] = boost::multiprecision::numerator(r).str();
  j["den"] = boost::multiprecision::denominator(r).str();
  return j;
}

// ---------------------------------------------------------------------------
// Names as JSON.

namespace {

Json clopen_list(const std::vector<Clopen>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(c.to_string());
  return a;
}

Json tail_json(const TailRule& tail) {
  return std::visit(
      [](const auto& t) -> Json {
        using T = std::decay_t<decltype(t)>;
        Json j;
        if constexpr (std::is_same_v<T, ZeroTail>) {
          j["kind"] = "zero";
        } else if constexpr (std::is_same_v<T, OneTail>) {
          j["kind"] = "one";
        } else if constexpr (std::is_same_v<T, ConstantTail>) {
          j["kind"] = "constant";
          j["clopen"] = t.clopen.to_string();
        } else if constexpr (std::is_same_v<T, SlidingPattern>) {
          j["kind"] = "sliding";
          j["pattern"] = t.bits;
        } else if constexpr (std::is_same_v<T, SlidingUnion>) {
          j["kind"] = "sliding_union";
          j["patterns"] = t.patterns;
        } else if constexpr (std::is_same_v<T, IndicatorTail>) {
          j["kind"] = "indicator";
          j["set"] = t.set.to_string();
        } else if constexpr (std::is_same_v<T, FreshBlocks>) {
          j["kind"] = "fresh";
          j["schedule"] = t.schedule.to_string();
          j["reserve"] = t.layout.reserve;
          j["width"] = t.layout.width;
        } else {
          j["kind"] = "spliced";
          j["cuts"] = t.cuts.cuts();
          Json pieces = Json::array();
          for (const auto& p : t.pieces) pieces.push_back(to_json(p));
          j["pieces"] = pieces;
        }
        return j;
      },
      tail);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorKind::Parse, std::string("name JSON is missing '") + key + "'");
  return j.at(key);
}

std::string text_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_string()) throw Error(ErrorKind::Parse, std::string("name JSON field '") + key + "' must be a string");
  return f.get<std::string>();
}

TailRule tail_from_json(const Json& j) {
  std::string kind = text_field(j, "kind");
  if (kind == "zero") return ZeroTail{};
  if (kind == "one") return OneTail{};
  if (kind == "constant") return ConstantTail{Clopen::parse(text_field(j, "clopen"))};
  if (kind == "sliding") return SlidingPattern{text_field(j, "pattern")};
  if (kind == "sliding_union") return SlidingUnion{field(j, "patterns").get<std::vector<std::string>>()};
  if (kind == "indicator") return IndicatorTail{EventuallyPeriodicSet::parse(text_field(j, "set"))};
  if (kind == "fresh") {
    FreshLayout layout;
    if (j.contains("reserve")) layout.reserve = j["reserve"].get<Coord>();
    if (j.contains("width")) layout.width = j["width"].get<std::uint32_t>();
    return FreshBlocks{Schedule::parse(text_field(j, "schedule")), layout};
  }
  if (kind == "spliced") {
    std::vector<Name> pieces;
    for (const auto& p : field(j, "pieces")) pieces.push_back(name_from_json(p));
    return Spliced{IntervalPartition(field(j, "cuts").get<std::vector<std::uint64_t>>()), std::move(pieces)};
  }
  throw Error(ErrorKind::Parse, "unknown tail kind '" + kind + "'");
}

}  // namespace

Json to_json(const Name& m) {
  Json j;
  switch (m.op()) {
    case Name::Op::Atom:
      j["op"] = "atom";
      j["prefix"] = clopen_list(m.prefix());
      j["tail"] = tail_json(m.tail());
      return j;
    case Name::Op::Meet:
    case Name::Op::Join:
      j["op"] = m.op() == Name::Op::Meet ? "meet" : "join";
      j["children"] = Json::array({to_json(m.left()), to_json(m.right())});
      return j;
    case Name::Op::Complement:
      j["op"] = "complement";
      j["children"] = Json::array({to_json(m.left())});
      return j;
    case Name::Op::AndConst:
      j["op"] = "and_const";
      j["clopen"] = m.constant().to_string();
      j["children"] = Json::array({to_json(m.left())});
      return j;
  }
  return j;
}

Name name_from_json(const Json& j) {
  std::string op = text_field(j, "op");
  auto child = [&](std::size_t i) {
    const Json& c = field(j, "children");
    if (!c.is_array() || c.size() <= i) throw Error(ErrorKind::Parse, "operator '" + op + "' is missing operands");
    return name_from_json(c[i]);
  };
  if (op == "atom") {
    std::vector<Clopen> prefix;
    if (j.contains("prefix"))
      for (const auto& c : j["prefix"]) prefix.push_back(Clopen::parse(c.get<std::string>()));
    return Name::atom(std::move(prefix), tail_from_json(field(j, "tail")));
  }
  if (op == "meet") return pointwise(BoolOp::Meet, child(0), child(1));
  if (op == "join") return pointwise(BoolOp::Join, child(0), child(1));
  if (op == "complement") return pointwise(BoolOp::Complement, child(0));
  if (op == "and_const") return and_const(child(0), Clopen::parse(text_field(j, "clopen")));
  throw Error(ErrorKind::Parse, "unknown name operator '" + op + "'");
}

// ---------------------------------------------------------------------------
// Inline name syntax.

namespace {

class NameParser {
 public:
  explicit NameParser(std::string_view s) : s_(s) {}

  Name parse() {
    Name m = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return m;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, "name syntax: " + what + " at offset " + std::to_string(pos_) + " in '" +
                                      std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  std::string_view until(char close) {
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '"') {
        ++pos_;
        while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
      } else if (c == '(') {
        ++depth;
      } else if (c == ')') {
        if (depth == 0 && close == ')') break;
        --depth;
      } else if (c == close && depth == 0) {
        break;
      }
      ++pos_;
    }
    if (pos_ >= s_.size()) fail(std::string("missing '") + close + "'");
    std::string_view body = s_.substr(start, pos_ - start);
    ++pos_;
    return body;
  }
  std::string bits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (s_[pos_] == '0' || s_[pos_] == '1')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  std::string_view schedule_text() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      until(')');
    }
    return s_.substr(start, pos_ - start);
  }

  Name expr() {
    Name m = term();
    while (accept('|')) m = pointwise(BoolOp::Join, m, term());
    return m;
  }
  Name term() {
    Name m = unary();
    while (accept('&')) m = pointwise(BoolOp::Meet, m, unary());
    return m;
  }
  Name unary() {
    if (accept('!')) return pointwise(BoolOp::Complement, unary());
    Name m = primary();
    while (accept('*')) {
      if (!accept('[')) fail("expected '[' after '*'");
      m = and_const(m, Clopen::parse(until(']')));
    }
    return m;
  }
  Name primary() {
    if (accept('(')) {
      Name m = expr();
      if (!accept(')')) fail("expected ')'");
      return m;
    }
    if (accept_word("Ms:")) return make_Ms(bits());
    if (accept_word("Malpha:")) {
      std::size_t at = s_.find('@', pos_);
      if (at == std::string_view::npos) fail("expected '@<depth>'");
      Rational alpha = parse_rational(s_.substr(pos_, at - pos_));
      pos_ = at + 1;
      std::size_t start = pos_;
      std::uint32_t depth = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        depth = depth * 10 + static_cast<std::uint32_t>(s_[pos_] - '0');
        if (depth > 1u << 16) fail("depth too large");
        ++pos_;
      }
      if (start == pos_) fail("expected a depth");
      return make_Malpha(alpha, depth);
    }
    if (accept_word("union:")) {
      std::vector<std::string> patterns{bits()};
      while (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        patterns.push_back(bits());
      }
      return sliding_union_name(std::move(patterns));
    }
    if (accept_word("indep:")) return fresh_name(Schedule::parse(schedule_text()));
    if (accept_word("vec[")) return constant_name(Clopen::parse(until(']')));
    if (accept_word("check[")) return indicator_name(EventuallyPeriodicSet::parse(until(']')));
    if (accept_word("zero")) return zero_name();
    if (accept_word("one")) return one_name();
    fail("unknown name atom");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

Name parse_name(std::string_view text) {
  text = trim(text);
  if (text.starts_with("{")) {
    try {
      return name_from_json(parse_json(text));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, std::string("bad name JSON: ") + e.what());
    }
  }
  return NameParser(text).parse();
}

std::vector<Name> parse_name_list(std::string_view text) {
  std::vector<Name> out;
  std::string_view t = trim(text);
  if (t.starts_with("[")) {
    Json j = parse_json(t);
    try {
      for (const auto& e : j) out.push_back(e.is_string() ? parse_name(e.get<std::string>()) : name_from_json(e));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, std::string("bad name JSON: ") + e.what());
    }
    return out;
  }
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    if (!line.empty() && !line.starts_with("#")) out.push_back(parse_name(line));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Results.

namespace {

Json exact_json(const ExactValue& v) {
  Json j;
  j["kind"] = "Exact";
  j["value"] = to_json(v.value);
  j["stabilization_index"] = v.stabilization_index;
  if (v.along) j["along"] = v.along->to_string();
  return j;
}

}  // namespace

Json to_json(const MeasureValue& v) {
  switch (v.kind()) {
    case MeasureValue::Kind::Exact: return exact_json(v.exact());
    case MeasureValue::Kind::Interval: {
      const auto& iv = v.interval();
      Json j;
      j["kind"] = "Interval";
      j["lo"] = to_json(iv.lo);
      j["hi"] = to_json(iv.hi);
      j["from"] = iv.from;
      j["window"] = iv.window;
      j["reason"] = iv.reason;
      return j;
    }
    case MeasureValue::Kind::Conditional: {
      const auto& cv = v.conditional();
      Json j;
      j["kind"] = "Conditional";
      Json q = Json::array();
      for (const auto& x : cv.queries) q.push_back(x.to_string());
      j["queries"] = q;
      Json branches = Json::array();
      for (const auto& b : cv.branches) {
        Json e;
        e["answers"] = b.answers;
        e["value"] = exact_json(b.value);
        branches.push_back(e);
      }
      j["branches"] = branches;
      return j;
    }
  }
  return {};
}

Json to_json(const Density& d) {
  Json j;
  j["kind"] = "Density";
  if (auto c = d.constant_value()) j["constant"] = to_json(*c);
  Json cells = Json::array();
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    Json c;
    c["cell"] = d.cells[i].to_string();
    c["value"] = to_json(d.values[i]);
    cells.push_back(c);
  }
  j["cells"] = cells;
  return j;
}

Json to_json(const DensityResult& d) {
  if (const auto* p = std::get_if<Density>(&d)) return to_json(*p);
  const auto& cd = std::get<ConditionalDensity>(d);
  Json j;
  j["kind"] = "ConditionalDensity";
  Json q = Json::array();
  for (const auto& x : cd.queries) q.push_back(x.to_string());
  j["queries"] = q;
  Json branches = Json::array();
  for (const auto& b : cd.branches) {
    Json e;
    e["answers"] = b.answers;
    e["density"] = to_json(b.density);
    branches.push_back(e);
  }
  j["branches"] = branches;
  return j;
}

Json to_json(const LeqVerdict& v) {
  Json j;
  j["kind"] = std::string(to_string(v.kind));
  switch (v.kind) {
    case LeqKind::Always: j["proof"] = v.proof; break;
    case LeqKind::Eventually:
      j["proof"] = v.proof;
      j["threshold"] = v.threshold;
      break;
    case LeqKind::No: j["witness"] = v.witness; break;
    case LeqKind::Unknown: j["reason"] = v.reason; break;
  }
  return j;
}

Json to_json(const FinitenessVerdict& v) {
  Json j;
  j["kind"] = std::string(to_string(v.kind));
  switch (v.kind) {
    case FinitenessKind::ForcedFinite: j["bound"] = v.bound; break;
    case FinitenessKind::ForcedInfinite: {
      j["evidence"] = to_json(v.evidence);
      j["valid_from"] = v.valid_from;
      j["spacing"] = v.spacing;
      j["count"] = v.count;
      Json samples = Json::array();
      for (const auto& s : v.samples) {
        Json e;
        e["from"] = s.from;
        e["measure"] = to_json(s.measure);
        samples.push_back(e);
      }
      j["samples"] = samples;
      break;
    }
    case FinitenessKind::Unknown: j["reason"] = v.reason; break;
  }
  return j;
}

Json to_json(const FullnessVerdict& v) {
  Json j;
  j["kind"] = std::string(to_string(v.kind));
  switch (v.kind) {
    case FullnessVerdict::Kind::Full: {
      j["rule"] = v.rule;
      Json table = Json::array();
      for (const auto& row : v.table) {
        Json e;
        e["eps"] = rational_json(row.eps);
        e["N"] = row.n;
        e["residual"] = to_json(row.residual);
        table.push_back(e);
      }
      j["certificates"] = table;
      break;
    }
    case FullnessVerdict::Kind::NotFull:
      j["rule"] = v.rule;
      j["residual"] = to_json(v.residual);
      j["stable_from"] = v.stable_from;
      break;
    case FullnessVerdict::Kind::Unknown:
      j["window"] = v.window;
      j["residual_at_window"] = to_json(v.residual);
      j["reason"] = v.reason;
      break;
  }
  return j;
}

Json to_json(const CnVerdict& v) {
  Json j;
  j["kind"] = v.in_cn ? "InCnUpTo" : "NotInCn";
  if (v.in_cn) {
    j["N"] = v.upto;
    j["note"] = "membership holds up to N only";
  } else {
    j["witness"] = v.witness;
  }
  j["joined"] = to_json(v.joined);
  j["bound"] = rational_json(v.bound);
  return j;
}

}  // namespace cantorlab
