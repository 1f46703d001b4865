#include "hyperlace/rayleigh/rayleigh.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "hyperlace/common/error.hpp"
#include "hyperlace/common/random.hpp"

namespace hyperlace {

namespace {

constexpr std::size_t kMaxGround = 24;
constexpr std::size_t kFullExchangeN = 14;
constexpr std::size_t kExchangeSamples = 4000;
constexpr std::size_t kEdmondsMaxN = 20;
constexpr std::size_t kMaxBases = 10000;

std::string subset_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : subset_elements(s)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::string vector_string(const Vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out;
}

bool basis_less(Subset a, Subset b) { return subset_elements(a) < subset_elements(b); }

// Next mask with the same popcount (Gosper).
Subset next_same_popcount(Subset v) {
  Subset t = v | (v - 1);
  return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

std::vector<std::size_t> subset_elements(Subset s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

Subset subset_from(const std::vector<std::size_t>& elements) {
  Subset s = 0;
  for (std::size_t i : elements) {
    require(i < kMaxGround, ErrorCode::Malformed, "element index out of range");
    s |= Subset{1} << i;
  }
  return s;
}

DiscreteMeasure::DiscreteMeasure(std::size_t n, std::vector<std::pair<Subset, Rational>> support)
    : n_(n), support_(std::move(support)) {
  require(n >= 1 && n <= kMaxGround, ErrorCode::Malformed, "ground set size must be in [1, 24]");
  require(!support_.empty(), ErrorCode::Malformed, "empty support");
  Subset limit = n == 32 ? ~Subset{0} : ((Subset{1} << n) - 1);
  std::unordered_set<Subset> seen;
  Rational total(0);
  for (auto& [s, p] : support_) {
    p.canonicalize();
    if ((s & ~limit) != 0) throw Error(ErrorCode::Malformed, "set leaves the ground set").with_witness({subset_string(s)});
    if (!seen.insert(s).second) throw Error(ErrorCode::Malformed, "repeated set").with_witness({subset_string(s)});
    if (sgn(p) <= 0) throw Error(ErrorCode::Malformed, "probabilities must be positive").with_witness({subset_string(s)});
    total += p;
  }
  if (total != 1) throw Error(ErrorCode::Malformed, "probabilities do not sum to 1").with_witness({to_string(total)});
}

bool DiscreteMeasure::constant_sum() const {
  int size = std::popcount(support_.front().first);
  return std::all_of(support_.begin(), support_.end(), [&](const auto& sp) { return std::popcount(sp.first) == size; });
}

std::size_t DiscreteMeasure::rank() const {
  require(constant_sum(), ErrorCode::PreconditionViolated, "measure is not constant-sum");
  return static_cast<std::size_t>(std::popcount(support_.front().first));
}

DiscreteMeasure uniform_measure(std::size_t n, const std::vector<Subset>& sets) {
  require(!sets.empty(), ErrorCode::Malformed, "empty support");
  Rational p = ratio(1, static_cast<long>(sets.size()));
  std::vector<std::pair<Subset, Rational>> support;
  support.reserve(sets.size());
  for (Subset s : sets) support.emplace_back(s, p);
  return DiscreteMeasure(n, std::move(support));
}

DiscreteMeasure uniform_matroid_measure(std::size_t d, std::size_t n) {
  return uniform_measure(n, uniform_matroid(d, n).bases());
}

std::vector<std::pair<std::size_t, std::size_t>> complete_graph(std::size_t vertices) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < vertices; ++a)
    for (std::size_t b = a + 1; b < vertices; ++b) edges.emplace_back(a, b);
  return edges;
}

std::vector<Subset> spanning_trees(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  require(vertices >= 2, ErrorCode::InvalidArgument, "need at least two vertices");
  require(edges.size() <= kMaxGround, ErrorCode::CapExceeded, "more than 24 edges");
  for (const auto& [a, b] : edges)
    require(a < vertices && b < vertices, ErrorCode::Malformed, "edge endpoint out of range");
  std::size_t need = vertices - 1;
  std::vector<Subset> trees;
  if (need > edges.size()) return trees;
  Subset end = Subset{1} << edges.size();
  for (Subset s = (Subset{1} << need) - 1; s < end; s = next_same_popcount(s)) {
    UnionFind uf(vertices);
    bool ok = true;
    for (std::size_t i : subset_elements(s)) {
      if (!uf.unite(edges[i].first, edges[i].second)) {
        ok = false;
        break;
      }
    }
    if (ok) trees.push_back(s);
    if (s == 0) break;
  }
  return trees;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_edge_list(const std::string& text, std::size_t& vertices) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::istringstream in(text);
  std::string line;
  vertices = 0;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long a = 0, b = 0;
    if (!(ls >> a)) continue;
    std::string rest;
    if (!(ls >> b) || (ls >> rest) || a < 0 || b < 0 || a == b)
      throw Error(ErrorCode::ParseError, "bad edge line").with_witness({std::to_string(lineno)});
    edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    vertices = std::max(vertices, static_cast<std::size_t>(std::max(a, b)) + 1);
  }
  return edges;
}

QMultiPoly partition_function(const DiscreteMeasure& mu) {
  QMultiPoly::Terms terms;
  for (const auto& [s, p] : mu.support()) {
    Exponent exp(mu.n(), 0);
    for (std::size_t i : subset_elements(s)) exp[i] = 1;
    terms.emplace(std::move(exp), p);
  }
  return QMultiPoly(mu.n(), std::move(terms));
}

Rational marginal(const DiscreteMeasure& mu, std::size_t i) {
  require(i < mu.n(), ErrorCode::InvalidArgument, "element index out of range");
  Rational total(0);
  for (const auto& [s, p] : mu.support())
    if (s >> i & 1) total += p;
  return total;
}

RayleighContext certify_strong_rayleigh(const DiscreteMeasure& mu, const CertifyStrategy& strategy,
                                        std::size_t orthant_samples) {
  require(mu.constant_sum(), ErrorCode::PreconditionViolated,
          "only constant-sum (homogeneous) measures are supported");
  QMultiPoly p = partition_function(mu);
  QContext ctx = certify_hyperbolic(p, ones<Rational>(mu.n()), strategy);
  std::size_t n = mu.n();
  for (std::size_t i = 0; i < n; ++i) {
    auto ei = unit_vector<Rational>(n, i);
    if (!cone_membership(ctx, ei, ConeMode::Closed))
      throw Error(ErrorCode::NotHyperbolic, "coordinate vector outside the closed cone").with_witness({std::to_string(i)});
  }
  Rng rng(strategy.seed ^ 0x5a17u);
  for (std::size_t s = 0; s < orthant_samples; ++s) {
    Vector<Rational> x(n);
    for (auto& xi : x) xi = Rational(rng.uniform_int(0, strategy.box));
    if (!cone_membership(ctx, x, ConeMode::Closed))
      throw Error(ErrorCode::NotHyperbolic, "nonnegative direction outside the closed cone").with_witness({vector_string(x)});
  }
  return RayleighContext{mu, std::move(ctx), orthant_samples};
}

QInstance rayleigh_instance(const RayleighContext& rc, std::size_t k) {
  std::vector<Vector<Rational>> us;
  for (std::size_t i = 0; i < rc.mu.n(); ++i) us.push_back(unit_vector<Rational>(rc.mu.n(), i));
  return make_instance(rc.ctx, std::move(us), k, "rayleigh");
}

PartitionCertificate rayleigh_partition(const RayleighContext& rc, std::size_t k) {
  return greedy_partition(rayleigh_instance(rc, k));
}

MatroidView::MatroidView(std::size_t n, std::vector<Subset> bases, std::uint64_t seed) : n_(n), bases_(std::move(bases)) {
  require(n >= 1 && n <= kMaxGround, ErrorCode::Malformed, "ground set size must be in [1, 24]");
  require(!bases_.empty(), ErrorCode::Malformed, "a matroid needs at least one basis");
  Subset limit = (Subset{1} << n) - 1;
  d_ = static_cast<std::size_t>(std::popcount(bases_.front()));
  for (Subset b : bases_) {
    if ((b & ~limit) != 0) throw Error(ErrorCode::Malformed, "basis leaves the ground set").with_witness({subset_string(b)});
    if (static_cast<std::size_t>(std::popcount(b)) != d_)
      throw Error(ErrorCode::ExchangeAxiom, "bases differ in size").with_witness({subset_string(bases_.front()), subset_string(b)});
  }
  std::sort(bases_.begin(), bases_.end(), basis_less);
  bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());

  // For x in B1 \ B2 some y in B2 \ B1 must give B1 - x + y a basis.
  auto check_pair = [&](Subset b1, Subset b2) {
    for (std::size_t x : subset_elements(b1 & ~b2)) {
      bool found = false;
      for (std::size_t y : subset_elements(b2 & ~b1)) {
        if (is_basis((b1 & ~(Subset{1} << x)) | (Subset{1} << y))) {
          found = true;
          break;
        }
      }
      if (!found)
        throw Error(ErrorCode::ExchangeAxiom, "basis exchange fails")
            .with_witness({subset_string(b1), subset_string(b2), std::to_string(x)});
    }
  };
  std::size_t nb = bases_.size();
  full_check_ = n <= kFullExchangeN;
  if (full_check_) {
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < nb; ++j)
        if (i != j) check_pair(bases_[i], bases_[j]);
  } else {
    Rng rng(seed);
    for (std::size_t s = 0; s < kExchangeSamples; ++s) {
      auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(nb) - 1));
      auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(nb) - 1));
      if (i != j) check_pair(bases_[i], bases_[j]);
    }
  }
}

bool MatroidView::is_basis(Subset s) const {
  return std::binary_search(bases_.begin(), bases_.end(), s, basis_less);
}

MatroidView uniform_matroid(std::size_t d, std::size_t n) {
  require(n >= 1 && n <= kMaxGround, ErrorCode::InvalidArgument, "n must be in [1, 24]");
  require(d <= n, ErrorCode::InvalidArgument, "need d <= n");
  std::vector<Subset> bases;
  if (d == 0) {
    bases.push_back(0);
  } else {
    Subset end = Subset{1} << n;
    for (Subset s = (Subset{1} << d) - 1; s < end; s = next_same_popcount(s)) bases.push_back(s);
  }
  return MatroidView(n, std::move(bases));
}

MatroidView graphic_matroid(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  auto trees = spanning_trees(vertices, edges);
  require(!trees.empty(), ErrorCode::InvalidArgument, "graph is disconnected");
  return MatroidView(edges.size(), std::move(trees));
}

MatroidView support_matroid(const DiscreteMeasure& mu) {
  require(mu.constant_sum(), ErrorCode::PreconditionViolated, "support of a non-constant-sum measure is not a basis family");
  std::vector<Subset> bases;
  for (const auto& sp : mu.support()) bases.push_back(sp.first);
  return MatroidView(mu.n(), std::move(bases));
}

std::size_t matroid_rank(const MatroidView& m, Subset s) {
  int best = 0;
  for (Subset b : m.bases()) best = std::max(best, std::popcount(s & b));
  return static_cast<std::size_t>(best);
}

EdmondsVerdict edmonds_check(const MatroidView& m, std::size_t k) {
  require(k >= 1, ErrorCode::InvalidArgument, "k must be positive");
  require(m.n() <= kEdmondsMaxN, ErrorCode::CapExceeded, "the rank inequality check needs n <= 20");
  std::size_t n = m.n();
  std::size_t full = std::size_t{1} << n;
  // Independent sets are the subsets of bases; rank by downward DP.
  std::vector<std::uint8_t> indep(full, 0);
  for (Subset b : m.bases()) indep[b] = 1;
  for (std::size_t s = full; s-- > 0;) {
    if (!indep[s]) continue;
    for (std::size_t t = s; t; t &= t - 1) indep[s & ~(t & -t)] = 1;
  }
  std::vector<std::uint8_t> rank(full, 0);
  auto kk = static_cast<long>(k);
  auto d = static_cast<long>(m.d());
  for (std::size_t s = 0; s < full; ++s) {
    if (indep[s]) {
      rank[s] = static_cast<std::uint8_t>(std::popcount(s));
    } else {
      std::uint8_t best = 0;
      for (std::size_t t = s; t; t &= t - 1) best = std::max(best, rank[s & ~(t & -t)]);
      rank[s] = best;
    }
  }
  for (std::size_t s = 0; s < full; ++s) {
    long size = std::popcount(s);
    if (kk * rank[s] < kk * d - (static_cast<long>(n) - size)) return {false, static_cast<Subset>(s)};
  }
  return {true, std::nullopt};
}

std::optional<std::vector<Subset>> find_disjoint_bases(const MatroidView& m, std::size_t k, std::size_t budget) {
  require(k >= 1, ErrorCode::InvalidArgument, "k must be positive");
  const auto& bases = m.bases();
  require(bases.size() <= kMaxBases, ErrorCode::BudgetExceeded, "more than 1e4 bases");
  if (k * m.d() > m.n()) return std::nullopt;
  std::vector<Subset> chosen;
  std::size_t nodes = 0;
  // Bases are taken in increasing index order, so the first hit is lexicographically first.
  auto search = [&](auto&& self, std::size_t from, Subset used) -> bool {
    if (chosen.size() == k) return true;
    if (++nodes > budget) throw Error(ErrorCode::BudgetExceeded, "disjoint basis search exceeded its budget");
    std::size_t left = m.n() - static_cast<std::size_t>(std::popcount(used));
    if (left < (k - chosen.size()) * m.d()) return false;
    for (std::size_t i = from; i < bases.size(); ++i) {
      if (bases[i] & used) continue;
      chosen.push_back(bases[i]);
      if (self(self, i + 1, used | bases[i])) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (search(search, 0, 0)) return chosen;
  return std::nullopt;
}

QuadSurd packing_threshold(std::size_t k) {
  require(k >= 2, ErrorCode::InvalidArgument, "k must be at least 2");
  auto kl = static_cast<long>(k);
  return QuadSurd(ratio(1, kl - 1) + ratio(1, kl), ratio(-2, kl * (kl - 1)), Rational(kl * (kl - 1)));
}

PackingReport packing_certificate(const RayleighContext& rc, std::size_t k) {
  PackingReport r;
  r.k = k;
  r.threshold = packing_threshold(k);
  r.max_marginal = 0;
  for (std::size_t i = 0; i < rc.mu.n(); ++i) r.max_marginal = std::max(r.max_marginal, marginal(rc.mu, i));
  r.theorem_applies = compare(r.threshold, r.max_marginal) >= 0;
  MatroidView mv = support_matroid(rc.mu);
  r.bases = find_disjoint_bases(mv, k);
  if (mv.n() <= kEdmondsMaxN) r.edmonds = edmonds_check(mv, k);
  if (r.theorem_applies)
    r.status = r.bases ? "applies-exhibited" : "applies-contradiction";
  else
    r.status = r.bases ? "silent-packing-exists" : "silent-no-packing";
  return r;
}

}  // namespace hyperlace
