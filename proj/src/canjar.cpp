#include "cantorlab/canjar.hpp"

#include <algorithm>

#include "cantorlab/error.hpp"
#include "cantorlab/filters.hpp"
#include "cantorlab/name_analysis.hpp"

namespace cantorlab {

namespace {

constexpr std::uint64_t kMaxCertificateMembers = std::uint64_t{1} << 20;

void require_condition(const Clopen& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroCondition, "the condition p must be nonzero");
}

bool below(const Dyadic& residual, const Rational& eps) { return compare(residual, eps) < 0; }

}  // namespace

std::string_view to_string(FullnessVerdict::Kind kind) {
  switch (kind) {
    case FullnessVerdict::Kind::Full: return "Full";
    case FullnessVerdict::Kind::NotFull: return "NotFull";
    case FullnessVerdict::Kind::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::vector<Rational> default_certificate_eps() {
  return {Rational(1, 32), Rational(1, 1024), Rational(1, 1 << 20)};
}

Dyadic fullness_residual(const Name& m, const Clopen& p, const EventuallyPeriodicSet& x, std::uint64_t big_n) {
  Clopen join;
  for (auto k = x.next_member(0); k && *k <= big_n; k = x.next_member(*k + 1)) join |= m.eval(*k);
  return (p - join).measure();
}

CertificateRow full_certificate(const Name& m, const Clopen& p, const EventuallyPeriodicSet& x, const Rational& eps) {
  require_condition(p);
  if (eps <= 0) throw Error(ErrorKind::Domain, "epsilon must be positive");
  Clopen rest = p;
  std::uint64_t seen = 0;
  for (auto k = x.next_member(0); k && seen < kMaxCertificateMembers; k = x.next_member(*k + 1), ++seen) {
    rest = rest - m.eval(*k);
    Dyadic r = rest.measure();
    if (below(r, eps)) return {eps, *k, r};
  }
  throw Error(ErrorKind::BoundExceeded, "no certificate among the first " + std::to_string(seen) + " members of X");
}

namespace {

FullnessVerdict unknown_at_window(const Name& m, const Clopen& p, const EventuallyPeriodicSet& x,
                                  std::uint64_t window, std::string reason) {
  FullnessVerdict v;
  v.kind = FullnessVerdict::Kind::Unknown;
  v.window = window;
  v.residual = fullness_residual(m, p, x, window - 1);
  v.reason = std::move(reason);
  return v;
}

void fill_table(FullnessVerdict& v, const Name& m, const Clopen& p, const EventuallyPeriodicSet& x,
                const std::vector<Rational>& eps) {
  for (const auto& e : eps) v.table.push_back(full_certificate(m, p, x, e));
}

}  // namespace

FullnessVerdict is_full(const Name& m, const Clopen& p, const EventuallyPeriodicSet& x,
                        const std::vector<Rational>& eps, std::uint64_t window) {
  require_condition(p);
  if (window == 0) throw Error(ErrorKind::Domain, "window must be at least 1");
  FullnessVerdict v;
  if (x.is_finite()) {
    std::uint64_t last = x.exceptions().empty() ? 0 : x.exceptions().back();
    Dyadic r = fullness_residual(m, p, x, last);
    if (r.is_zero()) {
      v.kind = FullnessVerdict::Kind::Full;
      v.rule = "finite-join";
      fill_table(v, m, p, x, eps);
    } else {
      v.kind = FullnessVerdict::Kind::NotFull;
      v.rule = "finite-join";
      v.residual = r;
      v.stable_from = last + 1;
    }
    return v;
  }
  TailShape shape = tail_shape(m);
  if (!shape.analyzable) return unknown_at_window(m, p, x, window, shape.reason);
  if (shape.open_fresh) {
    if (m.op() == Name::Op::Atom && m.prefix().empty() && std::holds_alternative<FreshBlocks>(m.tail())) {
      auto bc = borel_cantelli_verdict(std::get<FreshBlocks>(m.tail()).schedule, x);
      if (bc.kind() == BorelCantelliVerdict::Kind::Divergent) {
        v.kind = FullnessVerdict::Kind::Full;
        v.rule = "independent-divergent";
        fill_table(v, m, p, x, eps);
        return v;
      }
      return unknown_at_window(m, p, x, window, "independent blocks with a convergent sum over X");
    }
    return unknown_at_window(m, p, x, window, "open fresh schedule inside a compound name");
  }
  if (shape.mixed()) return unknown_at_window(m, p, x, window, "sliding windows and fresh blocks share coordinates");
  Regimes reg;
  auto support = p.support();
  std::vector<EventuallyPeriodicSet> sets{x};
  try {
    reg = regimes(shape, support, sets);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::UnsupportedName) throw;
    return unknown_at_window(m, p, x, window, e.what());
  }
  const std::size_t xi = reg.queries.size() - 1;
  // Cells of the fixed coordinates on which a recurring X-regime has
  // positive probability are covered almost surely by independent
  // repetitions of that regime.
  Clopen cover;
  for (std::uint64_t r = 0; r < reg.period; ++r) {
    if (!reg.answers[r][xi]) continue;
    Clopen g = m.eval(reg.reps[r]);
    if (!reg.has_fixed) {
      if (!g.is_zero()) cover = Clopen::one();
    } else {
      cover |= g.collapse(reg.fixed_bound, [](const Clopen& f) { return !f.is_zero(); });
    }
  }
  for (auto k = x.next_member(0); k && *k < reg.start; k = x.next_member(*k + 1)) cover |= m.eval(*k);
  Dyadic limit = (p - cover).measure();
  if (limit.is_zero()) {
    v.kind = FullnessVerdict::Kind::Full;
    v.rule = "tail-regime-cover";
    fill_table(v, m, p, x, eps);
  } else {
    v.kind = FullnessVerdict::Kind::NotFull;
    v.rule = "tail-regime-cover";
    v.residual = limit;
    v.stable_from = reg.start;
  }
  return v;
}

CnVerdict cn_check(const Name& e, const Clopen& p, std::uint64_t n, const EventuallyPeriodicSet& x,
                   std::uint64_t big_n) {
  require_condition(p);
  CnVerdict v;
  Dyadic lp = p.measure();
  v.bound = lp.to_rational() - Rational(1, n + 1);
  auto exceeds = [&](const Dyadic& m) { return compare(m, v.bound) > 0; };
  Clopen join;
  EventuallyPeriodicSet outside = x.complement();
  for (auto k = outside.next_member(0); k && *k <= big_n; k = outside.next_member(*k + 1)) {
    join |= e.eval(*k) & p;
    Dyadic m = join.measure();
    if (exceeds(m)) {
      v.witness = *k;
      v.joined = m;
      return v;
    }
  }
  v.in_cn = true;
  v.upto = big_n;
  v.joined = join.measure();
  if (exceeds(v.joined)) v.in_cn = false;
  return v;
}

Name splice(const IntervalPartition& cuts, const std::vector<Name>& es) { return spliced_name(cuts, es); }

IntervalPartition canonical_partition(const std::vector<Name>& es, const Clopen& p, const EventuallyPeriodicSet& x) {
  if (es.empty()) throw Error(ErrorKind::LengthMismatch, "need at least one name");
  std::vector<std::uint64_t> cuts{0};
  for (std::size_t n = 0; n + 1 < es.size(); ++n) {
    FullnessVerdict v = is_full(es[n], p, x, {});
    if (v.kind != FullnessVerdict::Kind::Full)
      throw Error(ErrorKind::Precondition, "name " + std::to_string(n) + " is not certified full");
    CertificateRow row = full_certificate(es[n], p, x, Rational(1, n + 1));
    cuts.push_back(std::max<std::uint64_t>(cuts.back() + 1, row.n));
  }
  return IntervalPartition(cuts);
}

}  // namespace cantorlab
