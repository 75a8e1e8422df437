#include "cantorlab/name_analysis.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cantorlab/error.hpp"

namespace cantorlab {

namespace {

class ShapeBuilder {
 public:
  void visit(const Name& m) {
    switch (m.op()) {
      case Name::Op::Meet:
      case Name::Op::Join:
        visit(m.left());
        visit(m.right());
        return;
      case Name::Op::Complement:
        visit(m.left());
        return;
      case Name::Op::AndConst:
        add_fixed(m.constant());
        visit(m.left());
        return;
      case Name::Op::Atom:
        raise(m.prefix().size());
        visit_tail(m.tail());
        return;
    }
  }

  TailShape finish() {
    if (open_count_ > 0 && s_.fresh.size() != 1) fail("an open fresh schedule is combined with other fresh values");
    std::uint64_t period = 1;
    for (const auto& x : s_.indicators) {
      period = std::lcm(period, x.period());
      if (period > kMaxRegimePeriod) {
        fail("indicator periods combine beyond " + std::to_string(kMaxRegimePeriod));
        break;
      }
    }
    s_.period = period;
    if (s_.has_sliding() && s_.has_fresh() && s_.slide_length > s_.layout->reserve) {
      std::uint64_t excess = s_.slide_length - s_.layout->reserve;
      if (s_.layout->width <= 1) {
        fail("sliding windows overrun fresh blocks of width 1");
      } else {
        std::uint64_t w = s_.layout->width - 1;
        raise((excess + w - 1) / w);
      }
    }
    s_.open_fresh = open_count_ > 0;
    s_.fixed.assign(fixed_.begin(), fixed_.end());
    if (s_.reason.empty()) s_.analyzable = true;
    return s_;
  }

 private:
  void fail(const std::string& why) {
    if (s_.reason.empty()) s_.reason = why;
  }
  void raise(std::uint64_t t) { s_.threshold = std::max(s_.threshold, t); }
  void add_fixed(const Clopen& c) {
    for (Coord v : c.support()) fixed_.insert(v);
  }

  void visit_tail(const TailRule& tail) {
    if (const auto* c = std::get_if<ConstantTail>(&tail)) {
      add_fixed(c->clopen);
    } else if (const auto* p = std::get_if<SlidingPattern>(&tail)) {
      s_.slide_length = std::max<std::uint32_t>(s_.slide_length, static_cast<std::uint32_t>(p->bits.size()));
    } else if (const auto* u = std::get_if<SlidingUnion>(&tail)) {
      for (const auto& s : u->patterns)
        s_.slide_length = std::max<std::uint32_t>(s_.slide_length, static_cast<std::uint32_t>(s.size()));
    } else if (const auto* ind = std::get_if<IndicatorTail>(&tail)) {
      raise(ind->set.threshold());
      if (!ind->set.is_finite() && !ind->set.is_cofinite() &&
          std::find(s_.indicators.begin(), s_.indicators.end(), ind->set) == s_.indicators.end())
        s_.indicators.push_back(ind->set);
    } else if (const auto* f = std::get_if<FreshBlocks>(&tail)) {
      if (s_.layout && !(*s_.layout == f->layout)) fail("fresh blocks use different layouts");
      s_.layout = f->layout;
      if (std::find(s_.fresh.begin(), s_.fresh.end(), f->schedule) == s_.fresh.end()) {
        s_.fresh.push_back(f->schedule);
        if (auto c = f->schedule.constant_from()) {
          raise(*c);
        } else if (auto o = f->schedule.open_from()) {
          raise(*o);
          ++open_count_;
        } else {
          fail("schedule " + f->schedule.to_string() + " has no tail rule");
        }
      }
    } else if (const auto* sp = std::get_if<Spliced>(&tail)) {
      raise(sp->cuts.last_cut());
      visit(sp->pieces.back());
    }
  }

  TailShape s_;
  std::set<Coord> fixed_;
  int open_count_ = 0;
};

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

TailShape tail_shape(const Name& m) {
  ShapeBuilder b;
  b.visit(m);
  return b.finish();
}

TailShape combined_shape(std::span<const Name> names) {
  ShapeBuilder b;
  for (const auto& m : names) b.visit(m);
  return b.finish();
}

Regimes regimes(const TailShape& shape, std::span<const Coord> extra_fixed,
                std::span<const EventuallyPeriodicSet> extra_sets) {
  if (!shape.analyzable) throw Error(ErrorKind::UnsupportedName, "name is outside the analyzable fragment: " + shape.reason);
  Regimes r;
  r.start = shape.threshold;
  r.period = shape.period;
  r.queries = shape.indicators;
  for (const auto& x : extra_sets) {
    r.queries.push_back(x);
    r.start = std::max(r.start, x.threshold());
    r.period = std::lcm(r.period, x.period());
    if (r.period > kMaxRegimePeriod)
      throw Error(ErrorKind::UnsupportedName, "regime period exceeds " + std::to_string(kMaxRegimePeriod));
  }
  std::optional<Coord> max_fixed;
  if (!shape.fixed.empty()) max_fixed = shape.fixed.back();
  for (Coord c : extra_fixed) max_fixed = max_fixed ? std::max(*max_fixed, c) : c;
  if (max_fixed) {
    r.has_fixed = true;
    r.fixed_bound = *max_fixed;
    if (shape.has_sliding()) r.start = std::max<std::uint64_t>(r.start, std::uint64_t{*max_fixed} + 1);
    if (shape.has_fresh() && *max_fixed >= shape.layout->reserve)
      r.start = std::max<std::uint64_t>(r.start, (*max_fixed - shape.layout->reserve) / shape.layout->width + 1);
  }
  r.reps.resize(r.period);
  r.answers.resize(r.period);
  for (std::uint64_t res = 0; res < r.period; ++res) {
    std::uint64_t k = r.start + (res + r.period - r.start % r.period) % r.period;
    r.reps[res] = k;
    for (const auto& q : r.queries) r.answers[res].push_back(q.contains(k));
  }
  return r;
}

std::uint64_t settle_index(std::uint64_t start, const std::function<bool(std::uint64_t)>& pred) {
  std::uint64_t t = start;
  while (t > 0 && pred(t - 1)) --t;
  return t;
}

std::string_view to_string(LeqKind kind) {
  switch (kind) {
    case LeqKind::Always: return "Always";
    case LeqKind::Eventually: return "Eventually";
    case LeqKind::No: return "No";
    case LeqKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(FinitenessKind kind) {
  switch (kind) {
    case FinitenessKind::ForcedFinite: return "ForcedFinite";
    case FinitenessKind::ForcedInfinite: return "ForcedInfinite";
    case FinitenessKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

const SlidingPattern* bare_pattern(const Name& m) {
  if (m.op() != Name::Op::Atom || !m.prefix().empty()) return nullptr;
  return std::get_if<SlidingPattern>(&m.tail());
}

}  // namespace

LeqVerdict leq_name(const Name& m, const Name& n, std::uint64_t window) {
  if (window == 0) throw Error(ErrorKind::Domain, "window must be at least 1");
  LeqVerdict v;
  const auto* pm = bare_pattern(m);
  const auto* pn = bare_pattern(n);
  if (pm && pn && pm->bits.starts_with(pn->bits)) {
    v.kind = LeqKind::Always;
    v.proof = "pattern-extension";
    return v;
  }
  Name diff = pointwise(BoolOp::Diff, m, n);
  TailShape shape = tail_shape(diff);
  if (!shape.analyzable) {
    v.reason = shape.reason;
    return v;
  }
  Regimes reg;
  try {
    reg = regimes(shape);
  } catch (const Error& e) {
    v.reason = e.what();
    return v;
  }
  std::uint64_t last_bad = 0;
  bool any_bad = false;
  for (std::uint64_t k : reg.reps) {
    if (!diff.eval(k).is_zero()) {
      any_bad = true;
      last_bad = std::max(last_bad, k);
    }
  }
  if (!any_bad) {
    std::uint64_t t = settle_index(reg.start, [&](std::uint64_t k) { return diff.eval(k).is_zero(); });
    v.kind = t == 0 ? LeqKind::Always : LeqKind::Eventually;
    v.proof = "regime-check";
    v.threshold = t;
    return v;
  }
  // Some residue class fails at every large index, so the failure recurs.
  for (std::uint64_t k = 0; k <= last_bad; ++k) {
    if (!diff.eval(k).is_zero()) {
      v.kind = LeqKind::No;
      v.witness = k;
      return v;
    }
  }
  return v;
}

FinitenessVerdict finiteness_certificate(const Name& m, std::uint64_t window) {
  if (window == 0) throw Error(ErrorKind::Domain, "window must be at least 1");
  FinitenessVerdict v;
  TailShape shape = tail_shape(m);
  if (!shape.analyzable) {
    v.reason = shape.reason;
    return v;
  }
  Regimes reg;
  try {
    reg = regimes(shape);
  } catch (const Error& e) {
    v.reason = e.what();
    return v;
  }
  std::vector<std::uint64_t> live;
  for (std::uint64_t r = 0; r < reg.period; ++r)
    if (!m.eval(reg.reps[r]).is_zero()) live.push_back(r);
  if (live.empty()) {
    v.kind = FinitenessKind::ForcedFinite;
    v.bound = settle_index(reg.start, [&](std::uint64_t k) { return m.eval(k).is_zero(); });
    return v;
  }
  if (shape.open_fresh) {
    v.reason = "tail measures vary with an open fresh schedule";
    return v;
  }
  if (shape.mixed()) {
    v.reason = "sliding windows and fresh blocks share coordinates across indices";
    return v;
  }
  std::uint64_t spacing = reg.period * std::max<std::uint64_t>(1, ceil_div(shape.slide_length, reg.period));
  std::uint64_t count = window / spacing;
  if (count == 0) {
    v.reason = "window " + std::to_string(window) + " is shorter than the regime spacing " + std::to_string(spacing);
    return v;
  }
  Dyadic best;
  for (std::uint64_t r : live) {
    Clopen join;
    for (std::uint64_t i = 0; i < count; ++i) join |= m.eval(reg.reps[r] + i * spacing);
    best = std::max(best, join.measure());
  }
  v.kind = FinitenessKind::ForcedInfinite;
  v.evidence = best;
  v.spacing = spacing;
  v.count = count;
  v.valid_from = reg.start > 0 ? reg.start - 1 : 0;
  std::set<std::uint64_t> froms{v.valid_from, reg.start + window, reg.start + 3 * window};
  for (std::uint64_t l : froms) {
    Clopen join;
    for (std::uint64_t k = l + 1; k <= l + window; ++k) join |= m.eval(k);
    v.samples.push_back({l, join.measure()});
  }
  return v;
}

}  // namespace cantorlab
