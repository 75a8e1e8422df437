#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantorlab/name.hpp"

namespace cantorlab {

struct CertificateRow {
  Rational eps;
  std::uint64_t n = 0;  // least N with residual(N) < eps
  Dyadic residual;      // residual(N)
};

/// Outcome of checking that the join of M(k) over k in X covers p.
struct FullnessVerdict {
  enum class Kind { Full, NotFull, Unknown };

  Kind kind = Kind::Unknown;
  std::string rule;
  std::vector<CertificateRow> table;  // Full
  /// NotFull: the exact limit of the residual; Unknown: the residual at the window.
  Dyadic residual;
  std::uint64_t stable_from = 0;  // NotFull: the cover is decided by indices below this
  std::uint64_t window = 0;       // Unknown
  std::string reason;
};

std::string_view to_string(FullnessVerdict::Kind kind);

/// measure(p minus the join of M(k) over k in X with k <= big_n).
Dyadic fullness_residual(const Name& m, const Clopen& p, const EventuallyPeriodicSet& x, std::uint64_t big_n);

/// Least N with fullness_residual(N) < eps, searching members of X in
/// order; throws BoundExceeded when none is found among the first 2^20.
CertificateRow full_certificate(const Name& m, const Clopen& p, const EventuallyPeriodicSet& x, const Rational& eps);

std::vector<Rational> default_certificate_eps();

/// Throws ZeroCondition when p = 0.
FullnessVerdict is_full(const Name& m, const Clopen& p, const EventuallyPeriodicSet& x,
                        const std::vector<Rational>& eps = default_certificate_eps(), std::uint64_t window = 64);

struct CnVerdict {
  bool in_cn = false;
  std::uint64_t upto = 0;     // InCnUpTo(N)
  std::uint64_t witness = 0;  // NotInCn: least prefix end exceeding the bound
  Dyadic joined;              // m at upto or witness
  Rational bound;             // measure(p) - 1/(n+1)
};

/// Compares m_N = measure(join over k not in X, k <= N, of E(k) & p) with
/// measure(p) - 1/(n+1). Throws ZeroCondition when p = 0.
CnVerdict cn_check(const Name& e, const Clopen& p, std::uint64_t n, const EventuallyPeriodicSet& x,
                   std::uint64_t big_n);

/// eval(result, k) = eval(Es[n], k) for k in interval n; the last name also
/// covers later intervals. Throws LengthMismatch unless |Es| is the number
/// of intervals or one less.
Name splice(const IntervalPartition& cuts, const std::vector<Name>& es);

/// cuts(0) = 0 and cuts(n+1) = max(cuts(n) + 1, N_n(1/(n+1))) from each
/// name's Full certificate; one interval per name.
IntervalPartition canonical_partition(const std::vector<Name>& es, const Clopen& p, const EventuallyPeriodicSet& x);

}  // namespace cantorlab
