#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperlace/common/surd.hpp"
#include "hyperlace/hyperb/context.hpp"
#include "hyperlace/partition/partition.hpp"

namespace hyperlace {

/// Subsets of the ground set {0, ..., n-1} as bit masks.
using Subset = std::uint32_t;

std::vector<std::size_t> subset_elements(Subset s);
Subset subset_from(const std::vector<std::size_t>& elements);

/// Probability measure on subsets of [n] with exact rational weights.
class DiscreteMeasure {
 public:
  /// Validates: n <= 24, subsets inside [n] and distinct, probabilities > 0
  /// summing to exactly 1. Throws Malformed otherwise.
  DiscreteMeasure(std::size_t n, std::vector<std::pair<Subset, Rational>> support);

  std::size_t n() const { return n_; }
  const std::vector<std::pair<Subset, Rational>>& support() const { return support_; }
  /// Every support set has the same size.
  bool constant_sum() const;
  /// Common support size (requires constant_sum()).
  std::size_t rank() const;

 private:
  std::size_t n_;
  std::vector<std::pair<Subset, Rational>> support_;
};

/// Uniform measure on the given sets.
DiscreteMeasure uniform_measure(std::size_t n, const std::vector<Subset>& sets);
/// Uniform on the bases of U_{d,n}.
DiscreteMeasure uniform_matroid_measure(std::size_t d, std::size_t n);
/// Spanning trees of a graph on `vertices` vertices; edges are ground elements.
std::vector<Subset> spanning_trees(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
/// Complete graph edge list in order (0,1), (0,2), ..., (n-2,n-1).
std::vector<std::pair<std::size_t, std::size_t>> complete_graph(std::size_t vertices);
/// Edge list from text, one "u v" pair per line (0-indexed); '#' starts a comment.
std::vector<std::pair<std::size_t, std::size_t>> parse_edge_list(const std::string& text, std::size_t& vertices);

/// P(x) = sum mu(S) prod_{j in S} x_j.
QMultiPoly partition_function(const DiscreteMeasure& mu);

/// P[i in S].
Rational marginal(const DiscreteMeasure& mu, std::size_t i);

/// A constant-sum measure whose partition function is certified hyperbolic
/// at the all-ones vector with the nonnegative orthant inside the closed cone.
struct RayleighContext {
  DiscreteMeasure mu;
  QContext ctx;
  std::size_t orthant_samples = 0;
};

/// Certifies a constant-sum measure. Non-constant-sum measures are rejected
/// (PreconditionViolated): only the homogeneous case is supported.
RayleighContext certify_strong_rayleigh(const DiscreteMeasure& mu, const CertifyStrategy& strategy = {},
                                        std::size_t orthant_samples = 100);

/// Greedy partition of e_1, ..., e_n under the partition function.
PartitionCertificate rayleigh_partition(const RayleighContext& rc, std::size_t k);
/// The instance behind rayleigh_partition.
QInstance rayleigh_instance(const RayleighContext& rc, std::size_t k);

/// Bases of a matroid on [n], validated against the exchange axiom (fully for
/// n <= 14, on seeded sampled pairs above).
class MatroidView {
 public:
  MatroidView(std::size_t n, std::vector<Subset> bases, std::uint64_t seed = 0);

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }
  const std::vector<Subset>& bases() const { return bases_; }
  bool is_basis(Subset s) const;
  bool exchange_checked_fully() const { return full_check_; }

 private:
  std::size_t n_;
  std::size_t d_ = 0;
  std::vector<Subset> bases_;  // sorted by element list
  bool full_check_ = true;
};

MatroidView uniform_matroid(std::size_t d, std::size_t n);
MatroidView graphic_matroid(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
MatroidView support_matroid(const DiscreteMeasure& mu);

/// max |S cap B| over bases.
std::size_t matroid_rank(const MatroidView& m, Subset s);

struct EdmondsVerdict {
  bool pass = false;
  std::optional<Subset> witness;  // first S (by mask value) with k r(S) < k d - (n - |S|)
};

/// Checks r(S) >= d - (n - |S|)/k for every S; n <= 20.
EdmondsVerdict edmonds_check(const MatroidView& m, std::size_t k);

/// k pairwise disjoint bases (lexicographically first by basis order) or none.
/// Throws BudgetExceeded past `budget` search nodes or when there are more
/// than 1e4 bases.
std::optional<std::vector<Subset>> find_disjoint_bases(const MatroidView& m, std::size_t k,
                                                       std::size_t budget = 10000000);

/// (1/sqrt(k-1) - 1/sqrt(k))^2, exact; k >= 2.
QuadSurd packing_threshold(std::size_t k);

struct PackingReport {
  std::size_t k = 0;
  QuadSurd threshold;
  Rational max_marginal;
  bool theorem_applies = false;
  std::optional<std::vector<Subset>> bases;
  std::optional<EdmondsVerdict> edmonds;  // when n <= 20
  /// "applies-exhibited", "applies-contradiction", "silent-packing-exists",
  /// "silent-no-packing"
  std::string status;
};

/// When every marginal is at most the threshold the support holds k disjoint
/// bases; the report exhibits them or flags the contradiction.
PackingReport packing_certificate(const RayleighContext& rc, std::size_t k);

}  // namespace hyperlace
