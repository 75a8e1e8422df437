#include "cantorlab/solovay.hpp"

#include <algorithm>
#include <map>

#include "cantorlab/error.hpp"

namespace cantorlab {

const ExactValue& MeasureValue::exact() const {
  if (auto* v = std::get_if<ExactValue>(&v_)) return *v;
  throw Error(ErrorKind::TypeMismatch, "measure value is not exact");
}

const IntervalValue& MeasureValue::interval() const {
  if (auto* v = std::get_if<IntervalValue>(&v_)) return *v;
  throw Error(ErrorKind::TypeMismatch, "measure value is not an interval");
}

const ConditionalValue& MeasureValue::conditional() const {
  if (auto* v = std::get_if<ConditionalValue>(&v_)) return *v;
  throw Error(ErrorKind::TypeMismatch, "measure value is not conditional");
}

std::string_view to_string(MeasureValue::Kind kind) {
  switch (kind) {
    case MeasureValue::Kind::Exact: return "Exact";
    case MeasureValue::Kind::Interval: return "Interval";
    case MeasureValue::Kind::Conditional: return "Conditional";
  }
  return "Exact";
}

Density Density::constant(const Dyadic& v) { return Density{{Clopen::one()}, {v}}; }

Density Density::from_cells(std::vector<std::pair<Dyadic, Clopen>> cells) {
  std::map<Dyadic, Clopen> merged;
  for (auto& [v, c] : cells)
    if (!c.is_zero()) merged[v] |= c;
  Density d;
  for (auto& [v, c] : merged) {
    d.values.push_back(v);
    d.cells.push_back(c);
  }
  return d;
}

Dyadic Density::integral(const Clopen& b) const {
  Dyadic sum;
  for (std::size_t i = 0; i < cells.size(); ++i) sum += values[i] * (cells[i] & b).measure();
  return sum;
}

std::optional<Dyadic> Density::constant_value() const {
  if (values.size() == 1) return values[0];
  return std::nullopt;
}

Dyadic Density::max_value() const { return values.empty() ? Dyadic(0) : values.back(); }

bool density_leq(const Density& d1, const Density& d2) {
  for (std::size_t i = 0; i < d1.cells.size(); ++i)
    for (std::size_t j = 0; j < d2.cells.size(); ++j)
      if (d1.values[i] > d2.values[j] && !d1.cells[i].disjoint(d2.cells[j])) return false;
  return true;
}

Name make_Ms(const std::string& s) {
  if (s.empty()) return constant_name(Clopen::one());
  return sliding_name(s);
}

std::vector<std::string> dyadic_antichain(const Rational& alpha, std::uint32_t depth) {
  if (alpha < 0 || alpha > 1) throw Error(ErrorKind::Domain, "alpha must lie in [0,1]");
  if (alpha == 1) return {""};
  std::vector<std::string> out;
  std::string prefix;
  Rational rest = alpha;
  for (std::uint32_t i = 1; i <= depth && rest != 0; ++i) {
    rest *= 2;
    if (rest >= 1) {
      out.push_back(prefix + "0");
      prefix += '1';
      rest -= 1;
    } else {
      prefix += '0';
    }
  }
  return out;
}

Name make_Malpha(const Rational& alpha, std::uint32_t depth) {
  auto antichain = dyadic_antichain(alpha, depth);
  if (alpha == 0) return zero_name();
  return sliding_union_name(std::move(antichain));
}

std::vector<Name> partition_family(std::uint32_t n, std::uint32_t bound) {
  if (n > bound)
    throw Error(ErrorKind::BoundExceeded,
                "partition size 2^" + std::to_string(n) + " exceeds bound 2^" + std::to_string(bound));
  std::vector<Name> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    std::string s(n, '0');
    for (std::uint32_t j = 0; j < n; ++j)
      if ((i >> (n - 1 - j)) & 1) s[j] = '1';
    out.push_back(make_Ms(s));
  }
  return out;
}

namespace {

struct Grouping {
  std::vector<std::size_t> kept;  // indices into reg.queries
  std::vector<std::pair<std::vector<bool>, std::size_t>> branches;  // key -> representative residue
};

std::vector<bool> project(const std::vector<bool>& answers, const std::vector<std::size_t>& kept) {
  std::vector<bool> key;
  for (std::size_t i : kept) key.push_back(answers[i]);
  return key;
}

// Drops every query whose answer does not affect the value class, then
// lists one residue per remaining answer vector.
Grouping group_by_answers(const Regimes& reg, const std::vector<std::size_t>& classes) {
  Grouping g;
  for (std::size_t i = 0; i < reg.queries.size(); ++i) g.kept.push_back(i);
  auto consistent = [&](const std::vector<std::size_t>& kept) {
    std::map<std::vector<bool>, std::size_t> seen;
    for (std::size_t r = 0; r < reg.period; ++r) {
      auto [it, fresh] = seen.emplace(project(reg.answers[r], kept), classes[r]);
      if (!fresh && it->second != classes[r]) return false;
    }
    return true;
  };
  if (!consistent(g.kept))
    throw Error(ErrorKind::UnsupportedName, "tail values are not determined by the oracle answers");
  for (std::size_t i = 0; i < reg.queries.size();) {
    auto candidate = g.kept;
    auto pos = std::find(candidate.begin(), candidate.end(), i);
    if (pos == candidate.end()) {
      ++i;
      continue;
    }
    candidate.erase(pos);
    if (consistent(candidate)) g.kept = std::move(candidate);
    ++i;
  }
  if (g.kept.size() > kMaxBranchQueries)
    throw Error(ErrorKind::BranchDepth, "limit depends on " + std::to_string(g.kept.size()) +
                                            " oracle queries; at most " + std::to_string(kMaxBranchQueries) +
                                            " are supported");
  std::map<std::vector<bool>, std::size_t> keys;
  for (std::size_t r = 0; r < reg.period; ++r) keys.emplace(project(reg.answers[r], g.kept), r);
  for (auto& [k, r] : keys) g.branches.emplace_back(k, r);
  return g;
}

bool answers_match(const Regimes& reg, const std::vector<std::size_t>& kept, const std::vector<bool>& key,
                   std::uint64_t k) {
  for (std::size_t j = 0; j < kept.size(); ++j)
    if (reg.queries[kept[j]].contains(k) != key[j]) return false;
  return true;
}

EventuallyPeriodicSet level_set(const Regimes& reg, const std::vector<std::size_t>& kept,
                                const std::vector<bool>& key) {
  std::vector<std::uint64_t> below;
  for (std::uint64_t k = 0; k < reg.start; ++k)
    if (answers_match(reg, kept, key, k)) below.push_back(k);
  std::vector<std::uint64_t> residues;
  for (std::uint64_t r = 0; r < reg.period; ++r)
    if (project(reg.answers[r], kept) == key) residues.push_back(r);
  return EventuallyPeriodicSet::make(reg.start, below, reg.period, residues);
}

template <typename T>
std::vector<std::size_t> value_classes(const std::vector<T>& values) {
  std::vector<std::size_t> classes;
  for (std::size_t r = 0; r < values.size(); ++r) {
    std::size_t c = r;
    for (std::size_t s = 0; s < r; ++s)
      if (values[s] == values[r]) {
        c = classes[s];
        break;
      }
    classes.push_back(c);
  }
  return classes;
}

IntervalValue sample_interval(const Name& m, const Clopen& b, std::uint64_t from, std::uint64_t window,
                              std::string reason) {
  IntervalValue iv;
  iv.from = from;
  iv.reason = std::move(reason);
  for (std::uint64_t i = 0; i < window; ++i) {
    Dyadic v;
    try {
      v = (m.eval(from + i) & b).measure();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WidthBound || i == 0) throw;
      break;
    }
    if (i == 0 || v < iv.lo) iv.lo = v;
    if (i == 0 || v > iv.hi) iv.hi = v;
    iv.window = i + 1;
  }
  return iv;
}

}  // namespace

MeasureValue limit_from_regimes(const Regimes& reg, const std::vector<Dyadic>& values,
                                const std::function<Dyadic(std::uint64_t)>& at) {
  auto classes = value_classes(values);
  Grouping g = group_by_answers(reg, classes);
  if (g.kept.empty()) {
    const Dyadic& v = values[0];
    return ExactValue{v, settle_index(reg.start, [&](std::uint64_t k) { return at(k) == v; }), std::nullopt};
  }
  ConditionalValue cv;
  for (std::size_t i : g.kept) cv.queries.push_back(reg.queries[i]);
  for (const auto& [key, r] : g.branches) {
    const Dyadic& v = values[r];
    const auto& kept = g.kept;
    std::uint64_t stab = settle_index(reg.start, [&](std::uint64_t k) {
      return !answers_match(reg, kept, key, k) || at(k) == v;
    });
    cv.branches.push_back({key, ExactValue{v, stab, level_set(reg, kept, key)}});
  }
  return cv;
}

MeasureValue tail_limit(const Name& m, const Clopen& b, std::uint64_t window) {
  if (window == 0) throw Error(ErrorKind::Domain, "window must be at least 1");
  TailShape shape = tail_shape(m);
  if (!shape.analyzable) return sample_interval(m, b, 0, window, shape.reason);
  auto support = b.support();
  Regimes reg;
  try {
    reg = regimes(shape, support);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedName) throw;
    return sample_interval(m, b, shape.threshold, window, e.what());
  }
  if (shape.open_fresh)
    return sample_interval(m, b, reg.start, window, "fresh schedule " + shape.fresh[0].to_string() +
                                                        " is not eventually constant");
  auto at = [&](std::uint64_t k) { return (m.eval(k) & b).measure(); };
  std::vector<Dyadic> values;
  for (std::uint64_t k : reg.reps) values.push_back(at(k));
  return limit_from_regimes(reg, values, at);
}

namespace {

Density density_at(const Name& m, const Regimes& reg, std::uint64_t k) {
  Clopen g = m.eval(k);
  if (!reg.has_fixed) return Density::constant(g.measure());
  std::map<Dyadic, bool> seen;
  std::vector<Dyadic> vals;
  for (const Clopen& f : g.frontier(reg.fixed_bound)) {
    Dyadic v = f.measure();
    if (seen.emplace(v, true).second) vals.push_back(v);
  }
  std::vector<std::pair<Dyadic, Clopen>> cells;
  for (const Dyadic& v : vals)
    cells.emplace_back(v, g.collapse(reg.fixed_bound, [&](const Clopen& f) { return f.measure() == v; }));
  return Density::from_cells(std::move(cells));
}

}  // namespace

DensityResult density(const Name& m) {
  TailShape shape = tail_shape(m);
  if (!shape.analyzable)
    throw Error(ErrorKind::UnsupportedName, "no density: name is outside the analyzable fragment: " + shape.reason);
  if (shape.open_fresh)
    throw Error(ErrorKind::UnsupportedName,
                "no density: fresh schedule " + shape.fresh[0].to_string() + " is not eventually constant");
  Regimes reg = regimes(shape);
  std::vector<Density> per;
  for (std::uint64_t k : reg.reps) per.push_back(density_at(m, reg, k));
  auto classes = value_classes(per);
  Grouping g = group_by_answers(reg, classes);
  if (g.kept.empty()) return per[0];
  ConditionalDensity cd;
  for (std::size_t i : g.kept) cd.queries.push_back(reg.queries[i]);
  for (const auto& [key, r] : g.branches) cd.branches.push_back({key, per[r]});
  return cd;
}

Density unconditional_density(const Name& m) {
  auto d = density(m);
  if (auto* p = std::get_if<Density>(&d)) return *p;
  throw Error(ErrorKind::UnsupportedName, "density depends on oracle answers");
}

}  // namespace cantorlab
