#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperlace/common/surd.hpp"
#include "hyperlace/hyperb/context.hpp"

namespace hyperlace {

/// Rank-one vectors u_1..u_m in the closed cone summing to e, to be split
/// into k parts. eps is the largest trace.
template <class T>
struct Instance {
  HyperbolicContext<T> ctx;
  std::vector<Vector<T>> us;
  std::size_t k = 2;
  T eps{};
  std::string kind;

  std::size_t m() const { return us.size(); }
  static constexpr bool exact() { return ScalarTraits<T>::exact; }
};

using QInstance = Instance<Rational>;
using FInstance = Instance<double>;

/// Float instances accept sum u_i = e within this entrywise tolerance.
inline constexpr double kFloatSumTol = 1e-9;

/// Validates the invariants (ranks <= 1, closed cone, sum e) and fills eps.
template <class T>
Instance<T> make_instance(HyperbolicContext<T> ctx, std::vector<Vector<T>> us, std::size_t k, std::string kind);

/// u_i = e_i under e_d on n variables with e = (1, ..., 1); traces d/n.
QInstance standard_basis(std::size_t n, std::size_t d, std::size_t k);

/// m random rank-one d x d matrices a a^T (Gaussian a), whitened to sum to
/// the identity, in symmetric-determinant coordinates. Resamples while the
/// Gram matrix has condition number above 1e8.
FInstance determinant_rank1(std::size_t d, std::size_t m, std::size_t k, std::uint64_t seed);

/// Instances side by side on disjoint variable blocks, h = h_1(x^1) h_2(x^2) ...
/// All parts must share k.
template <class T>
Instance<T> direct_sum(const std::vector<Instance<T>>& parts);

/// Conditional expected characteristic polynomials of the k-fold product
/// construction: vector j goes to part i with probability 1/k, contributing
/// k u_j to block i. A partial assignment fixes vectors 0..r-1; the rest stay
/// random. Block tables are cached by assigned set, so a greedy walk reuses
/// most of the work.
template <class T>
class ExpectationEngine {
 public:
  explicit ExpectationEngine(const Instance<T>& inst);

  /// Degree kd polynomial; `partial[j]` is the part of vector j.
  UniPoly<T> expected(const std::vector<std::size_t>& partial);

  const Instance<T>& instance() const { return inst_; }

 private:
  using Table = std::unordered_map<std::uint32_t, std::vector<T>>;  // subset -> coefficients in t
  const Table& table_for(std::uint32_t assigned);
  UniPoly<T> combine(const std::vector<const Table*>& blocks, std::uint32_t unassigned) const;

  const Instance<T>& inst_;
  std::size_t d_ = 0;
  std::vector<std::uint32_t> small_subsets_;  // subsets of size <= d
  std::unordered_map<std::uint32_t, MultiPoly<T>> derivs_;  // (-1)^|T| D_{u_T} h
  std::unordered_map<std::uint32_t, Table> tables_;
};

template <class T>
UniPoly<T> expected_charpoly(const Instance<T>& inst, const std::vector<std::size_t>& partial);

/// Average of prod_i h(te - k sum_{S_i} u) over every completion of `partial`.
/// Exponential; used as an oracle.
template <class T>
UniPoly<T> brute_force_expected(const Instance<T>& inst, const std::vector<std::size_t>& partial);

/// prod_i h(te - k sum_{j in S_i} u_j) for a full assignment.
template <class T>
UniPoly<T> assignment_poly(const Instance<T>& inst, const std::vector<std::size_t>& assignment);

struct PartitionCertificate {
  std::string method;                     // "greedy" | "exhaustive"
  std::string backend;
  std::size_t k = 0;
  std::vector<std::size_t> assignment;    // vector index -> part in [0, k)
  std::vector<std::vector<double>> part_spectra;
  std::vector<double> part_lambda_max;
  std::size_t worst_part = 0;
  double max_seminorm = 0;
  std::optional<QuadSurd> bound;          // delta(k eps, m) / k, exact instances
  double bound_value = 0;
  double margin = 0;
  bool pass = false;
  std::vector<double> greedy_trace;       // largest root of each conditional expectation
  bool trace_monotone = true;
  bool intermediates_real_rooted = true;
};

/// Walks j = 0..m-1 and puts vector j in the part minimizing the largest
/// root of the conditional expectation; exact ties go to the lowest part.
/// Exact instances compare roots exactly and Sturm-check every intermediate.
template <class T>
PartitionCertificate greedy_partition(const Instance<T>& inst);

/// Minimizes the largest part seminorm over all k^m assignments (k^m <= 1e6,
/// else BudgetExceeded). Ties go to the lexicographically first assignment.
template <class T>
PartitionCertificate exhaustive_partition(const Instance<T>& inst, std::size_t budget = 1000000);

struct VerifyReport {
  bool pass = false;
  bool trivial_pass = false;  // bound >= 1, so every partition passes
  bool consistent = false;    // recomputed values match the certificate
  std::vector<double> part_lambda_max;
  double max_seminorm = 0;
  double bound_value = 0;
  double margin = 0;
  std::string note;
};

/// Recomputes every part spectrum and the bound from scratch. Throws
/// Malformed on assignments that are not a partition of [m] into k parts.
template <class T>
VerifyReport verify_certificate(const Instance<T>& inst, const PartitionCertificate& cert, double tol = 1e-9);

/// delta(k eps, m) / k.
QuadSurd partition_bound(const Rational& eps, std::size_t k, std::size_t m);
double partition_bound(double eps, std::size_t k, std::size_t m);

}  // namespace hyperlace
