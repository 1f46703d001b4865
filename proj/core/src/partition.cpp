#include "hyperlace/partition/partition.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <type_traits>

#include "hyperlace/common/error.hpp"
#include "hyperlace/common/parallel.hpp"
#include "hyperlace/mixedchar/mixed.hpp"

namespace hyperlace {

namespace {

constexpr std::size_t kMaxVectors = 24;
constexpr std::size_t kMaxUnassigned = 20;

template <class T>
using Traits = ScalarTraits<T>;

template <class T>
Vector<T> zeros(std::size_t n) {
  return Vector<T>(n, Traits<T>::from_int(0));
}

template <class T>
Vector<T> subset_sum(const Instance<T>& inst, std::uint32_t mask) {
  Vector<T> s = zeros<T>(inst.ctx.nvars());
  for (std::size_t j = 0; j < inst.m(); ++j)
    if (mask >> j & 1u)
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += inst.us[j][i];
  return s;
}

template <class T>
std::vector<std::uint32_t> part_masks(const std::vector<std::size_t>& assignment, std::size_t k) {
  std::vector<std::uint32_t> masks(k, 0);
  for (std::size_t j = 0; j < assignment.size(); ++j) masks[assignment[j]] |= 1u << j;
  return masks;
}

template <class T>
bool float_in_closed_cone(const FContext& ctx, const Vector<double>& x) {
  Spectrum s = spectrum(ctx, x);
  double scale = 1.0;
  for (double v : s.values) scale = std::max(scale, std::fabs(v));
  return s.values.empty() || s.min() >= -1e-9 * scale;
}

// Eigenvalues of a part sum; empty parts have all-zero spectra.
template <class T>
Spectrum part_spectrum(const Instance<T>& inst, std::uint32_t mask) {
  return spectrum(inst.ctx, subset_sum(inst, mask));
}

template <class T>
void add_into(std::vector<T>& acc, const std::vector<T>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] += x[i];
}

}  // namespace

QuadSurd partition_bound(const Rational& eps, std::size_t k, std::size_t m) {
  require(k >= 1, ErrorCode::InvalidArgument, "k must be positive");
  return delta_bound(Rational(eps * static_cast<long>(k)), m) / Rational(static_cast<long>(k));
}

double partition_bound(double eps, std::size_t k, std::size_t m) {
  require(k >= 1 && m >= 1, ErrorCode::InvalidArgument, "k and m must be positive");
  const double p = 1.0 - 1.0 / static_cast<double>(m);
  const double q = eps * static_cast<double>(k) - p / static_cast<double>(m);
  require(q >= -1e-12, ErrorCode::InvalidArgument, "k eps below (1/m)(1 - 1/m)");
  const double r = p + std::sqrt(std::max(q, 0.0));
  return r * r / static_cast<double>(k);
}

template <class T>
Instance<T> make_instance(HyperbolicContext<T> ctx, std::vector<Vector<T>> us, std::size_t k, std::string kind) {
  require(!us.empty(), ErrorCode::InvalidArgument, "instance needs at least one vector");
  require(us.size() <= kMaxVectors, ErrorCode::CapExceeded, "instances hold at most 24 vectors");
  require(k >= 1, ErrorCode::InvalidArgument, "k must be positive");
  const std::size_t n = ctx.nvars();
  Vector<T> sum = zeros<T>(n);
  T eps = Traits<T>::from_int(0);
  for (std::size_t j = 0; j < us.size(); ++j) {
    require(us[j].size() == n, ErrorCode::DimensionMismatch, "vector length differs from nvars");
    if (rank(ctx, us[j]) > 1)
      throw Error(ErrorCode::PreconditionViolated, "u_" + std::to_string(j) + " has rank above one")
          .with_witness({std::to_string(j)});
    bool in_cone;
    if constexpr (Traits<T>::exact) in_cone = cone_membership(ctx, us[j], ConeMode::Closed);
    else in_cone = float_in_closed_cone<T>(ctx, us[j]);
    if (!in_cone)
      throw Error(ErrorCode::OutsideCone, "u_" + std::to_string(j) + " is outside the closed cone")
          .with_witness({std::to_string(j)});
    for (std::size_t i = 0; i < n; ++i) sum[i] += us[j][i];
    T tr = trace(ctx, us[j]);
    if (tr > eps) eps = tr;
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool ok;
    if constexpr (Traits<T>::exact) ok = sum[i] == ctx.e()[i];
    else ok = std::fabs(sum[i] - ctx.e()[i]) <= kFloatSumTol;
    if (!ok) fail(ErrorCode::PreconditionViolated, "vectors do not sum to e (coordinate " + std::to_string(i) + ")");
  }
  Instance<T> inst{std::move(ctx), std::move(us), k, eps, std::move(kind)};
  return inst;
}

QInstance standard_basis(std::size_t n, std::size_t d, std::size_t k) {
  require(d >= 1 && d <= n, ErrorCode::InvalidArgument, "standard_basis needs 1 <= d <= n");
  QContext ctx = certify_hyperbolic(elementary_symmetric(n, static_cast<int>(d)), ones<Rational>(n));
  std::vector<Vector<Rational>> us;
  for (std::size_t i = 0; i < n; ++i) us.push_back(unit_vector<Rational>(n, i));
  return make_instance(std::move(ctx), std::move(us), k,
                       "standard_basis(" + std::to_string(n) + "," + std::to_string(d) + ")");
}

FInstance determinant_rank1(std::size_t d, std::size_t m, std::size_t k, std::uint64_t seed) {
  require(d >= 1 && d <= 5, ErrorCode::InvalidArgument, "determinant instances need 1 <= d <= 5");
  if (m < d) fail(ErrorCode::Infeasible, "need m >= d rank-one matrices to sum to the identity");
  Rng rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Eigen::VectorXd> as(m, Eigen::VectorXd(static_cast<Eigen::Index>(d)));
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (auto& a : as) {
      for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = rng.normal();
      gram += a * a.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const auto& lam = eig.eigenvalues();
    if (lam.minCoeff() <= 0 || lam.maxCoeff() / lam.minCoeff() > 1e8) continue;
    Eigen::MatrixXd w = eig.eigenvectors() * lam.cwiseSqrt().cwiseInverse().asDiagonal() *
                        eig.eigenvectors().transpose();
    std::vector<Vector<double>> us;
    for (const auto& a : as) {
      Eigen::VectorXd b = w * a;
      std::vector<std::vector<double>> mat(d, std::vector<double>(d));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          mat[i][j] = b[static_cast<Eigen::Index>(i)] * b[static_cast<Eigen::Index>(j)];
      us.push_back(flatten_symmetric(mat));
    }
    std::vector<std::vector<double>> id(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) id[i][i] = 1.0;
    FContext ctx = certify_hyperbolic(to_double(symmetric_determinant(static_cast<int>(d))), flatten_symmetric(id));
    return make_instance(std::move(ctx), std::move(us), k,
                         "determinant_rank1(" + std::to_string(d) + "," + std::to_string(m) + "," +
                             std::to_string(seed) + ")");
  }
  fail(ErrorCode::Infeasible, "whitening stayed ill-conditioned after 100 resamples");
}

template <class T>
Instance<T> direct_sum(const std::vector<Instance<T>>& parts) {
  require(!parts.empty(), ErrorCode::InvalidArgument, "direct_sum needs at least one instance");
  std::size_t total = 0;
  for (const auto& p : parts) {
    require(p.k == parts.front().k, ErrorCode::InvalidArgument, "direct_sum parts must share k");
    total += p.ctx.nvars();
  }
  require(total <= poly_limits().max_nvars, ErrorCode::CapExceeded, "direct sum exceeds the variable cap");
  MultiPoly<T> h = MultiPoly<T>::constant(total, Traits<T>::from_int(1));
  Vector<T> e;
  std::vector<Vector<T>> us;
  Certification cert;
  cert.strategy = "structural";
  cert.family = Family::BlockProduct;
  std::string kind = "direct_sum(";
  std::size_t offset = 0;
  for (const auto& p : parts) {
    h = h * p.ctx.h().embed(total, offset);
    e.insert(e.end(), p.ctx.e().begin(), p.ctx.e().end());
    for (const auto& u : p.us) {
      Vector<T> v = zeros<T>(total);
      std::copy(u.begin(), u.end(), v.begin() + static_cast<long>(offset));
      us.push_back(std::move(v));
    }
    cert.evidence.push_back("block at offset " + std::to_string(offset) + ": " + family_name(p.ctx.family()) + " (" +
                            p.ctx.certification().strategy + ")");
    kind += (offset ? "," : "") + p.kind;
    offset += p.ctx.nvars();
  }
  HyperbolicContext<T> ctx = HyperbolicContext<T>::from_parts(std::move(h), std::move(e), std::move(cert));
  return make_instance(std::move(ctx), std::move(us), parts.front().k, kind + ")");
}

// ---------------------------------------------------------------------------
// Conditional expectations.
//
// With H_i(s) = h(te - k sum_{j in A_i} u_j - sum_{j in U} s_j u_j), which is
// affine in each s_j because every u_j has rank <= 1, the expectation over the
// unassigned set U is the sum over pairwise disjoint T_1, ..., T_k in U of
// prod_i [s^{T_i}] H_i. The coefficient [s^T] H_i vanishes for |T| > d. The
// disjoint sum is evaluated as a ranked subset convolution: ranked zeta
// transforms, pointwise products in the rank variable z, then Moebius
// inversion summed over all target sets in closed form.

template <class T>
ExpectationEngine<T>::ExpectationEngine(const Instance<T>& inst) : inst_(inst), d_(inst.ctx.degree()) {
  const std::size_t m = inst.m();
  require(m <= kMaxVectors, ErrorCode::CapExceeded, "instances hold at most 24 vectors");
  derivs_.emplace(0u, inst.ctx.h());
  std::vector<std::uint32_t> frontier{0u};
  small_subsets_.push_back(0u);
  for (std::size_t size = 1; size <= d_ && !frontier.empty(); ++size) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t mask : frontier) {
      const std::size_t start = mask ? static_cast<std::size_t>(std::bit_width(mask)) : 0;
      for (std::size_t j = start; j < m; ++j) {
        MultiPoly<T> p = -derivs_.at(mask).directional_derivative(inst.us[j]);
        if (p.is_zero()) continue;
        std::uint32_t nm = mask | (1u << j);
        derivs_.emplace(nm, std::move(p));
        next.push_back(nm);
        small_subsets_.push_back(nm);
      }
    }
    frontier = std::move(next);
  }
}

template <class T>
const typename ExpectationEngine<T>::Table& ExpectationEngine<T>::table_for(std::uint32_t assigned) {
  auto it = tables_.find(assigned);
  if (it != tables_.end()) return it->second;
  Vector<T> base = subset_sum(inst_, assigned);
  const T scale = Traits<T>::from_int(-static_cast<long>(inst_.k));
  for (auto& c : base) c *= scale;
  std::vector<std::uint32_t> keys;
  for (std::uint32_t mask : small_subsets_)
    if ((mask & assigned) == 0) keys.push_back(mask);
  auto polys = parallel_map(keys.size(), [&](std::size_t i) {
    UniPoly<T> p = derivs_.at(keys[i]).restrict_to_line(base, inst_.ctx.e());
    std::vector<T> c(d_ + 1, Traits<T>::from_int(0));
    for (std::size_t a = 0; a < p.coeffs().size() && a <= d_; ++a) c[a] = p.coeffs()[a];
    return c;
  });
  Table table;
  for (std::size_t i = 0; i < keys.size(); ++i) table.emplace(keys[i], std::move(polys[i]));
  return tables_.emplace(assigned, std::move(table)).first->second;
}

namespace {

// Exact tables are scaled to integers so the convolution runs in Z.
template <class T>
struct Accum;
template <>
struct Accum<Rational> {
  using type = mpz_class;
  static bool zero(const mpz_class& x) { return sgn(x) == 0; }
  static void addmul(mpz_class& acc, const mpz_class& a, const mpz_class& b) {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
};
template <>
struct Accum<double> {
  using type = double;
  static bool zero(double x) { return x == 0.0; }
  static void addmul(double& acc, double a, double b) { acc += a * b; }
};

}  // namespace

template <class T>
UniPoly<T> ExpectationEngine<T>::combine(const std::vector<const Table*>& blocks, std::uint32_t unassigned) const {
  using Ops = Accum<T>;
  using A = typename Ops::type;
  const std::size_t k = blocks.size();
  const std::size_t d = d_;
  const std::size_t kd = k * d;
  const std::size_t W = d + 1;
  const std::size_t KW = kd + 1;
  std::vector<std::size_t> bits;
  for (std::size_t j = 0; j < 32; ++j)
    if (unassigned >> j & 1u) bits.push_back(j);
  const std::size_t u = bits.size();
  require(u <= kMaxUnassigned, ErrorCode::CapExceeded, "too many unassigned vectors for the exact expectation");
  const std::size_t N = std::size_t{1} << u;

  auto local = [&](std::uint32_t mask) {
    std::uint32_t out = 0;
    for (std::size_t b = 0; b < u; ++b)
      if (mask >> bits[b] & 1u) out |= 1u << b;
    return out;
  };

  // fhat[i][r][R * W + a]: t^a coefficient of the sum of [s^T] H_i over T in R, |T| = r.
  std::vector<std::vector<std::vector<A>>> fhat(k, std::vector<std::vector<A>>(d + 1));
  std::vector<std::vector<std::vector<char>>> live(k, std::vector<std::vector<char>>(d + 1));
  mpz_class total_scale = 1;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r <= d; ++r) {
      fhat[i][r].assign(N * W, A(0));
      live[i][r].assign(N, 0);
    }
    mpz_class scale = 1;
    if constexpr (Traits<T>::exact) {
      for (const auto& [mask, coeffs] : *blocks[i])
        if ((mask & ~unassigned) == 0)
          for (const auto& c : coeffs) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
      total_scale *= scale;
    }
    for (const auto& [mask, coeffs] : *blocks[i]) {
      if ((mask & ~unassigned) != 0) continue;
      const std::size_t r = static_cast<std::size_t>(std::popcount(mask));
      const std::uint32_t l = local(mask);
      for (std::size_t a = 0; a < W; ++a) {
        if constexpr (Traits<T>::exact) fhat[i][r][l * W + a] = coeffs[a].get_num() * (scale / coeffs[a].get_den());
        else fhat[i][r][l * W + a] = coeffs[a];
      }
      live[i][r][l] = 1;
    }
  }
  parallel_map(k * (d + 1), [&](std::size_t job) {
    const std::size_t i = job / (d + 1), r = job % (d + 1);
    auto& f = fhat[i][r];
    auto& lv = live[i][r];
    for (std::size_t b = 0; b < u; ++b) {
      const std::size_t bit = std::size_t{1} << b;
      for (std::size_t R = 0; R < N; ++R) {
        if (!(R & bit) || !lv[R ^ bit]) continue;
        const std::size_t src = (R ^ bit) * W, dst = R * W;
        for (std::size_t a = 0; a < W; ++a) f[dst + a] += f[src + a];
        lv[R] = 1;
      }
    }
    return 0;
  });

  // Moebius inversion summed over all S containing R collapses to weights
  // (-1)^(s - |R|) C(u - |R|, s - |R|) on the z^s coefficient.
  std::vector<std::vector<A>> weight(u + 1, std::vector<A>(u + 1, A(0)));
  for (std::size_t p = 0; p <= u; ++p) {
    A c(1);
    for (std::size_t s = p; s <= u; ++s) {
      weight[p][s] = (s - p) % 2 ? A(-c) : c;
      // C(u - p, s - p + 1) from C(u - p, s - p)
      c = c * A(static_cast<long>(u - s)) / A(static_cast<long>(s - p + 1));
    }
  }

  const std::size_t chunks = std::min<std::size_t>(N, 256);
  auto partial = parallel_map(chunks, [&](std::size_t c) {
    std::vector<A> acc(KW, A(0)), cur((u + 1) * KW, A(0)), nxt((u + 1) * KW, A(0));
    for (std::size_t R = c; R < N; R += chunks) {
      const std::size_t p = static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(R)));
      if (p > kd) continue;
      std::size_t zc = 0;
      cur[0] = A(1);
      bool vanished = false;
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t before = i * d;  // t-degree of cur[s] is at most before - s
        const std::size_t zn = std::min(zc + d, u);
        for (std::size_t s = 0; s <= zn; ++s)
          for (std::size_t a = 0; a + s <= before + d && a < KW; ++a) nxt[s * KW + a] = 0;
        bool any = false;
        for (std::size_t r = 0; r <= d; ++r) {
          if (!live[i][r][R]) continue;
          const A* g = &fhat[i][r][R * W];
          const std::size_t glen = d - r + 1;
          for (std::size_t s = 0; s <= zc && s + r <= zn && s <= before; ++s) {
            const std::size_t clen = before - s + 1;
            A* out = &nxt[(s + r) * KW];
            const A* in = &cur[s * KW];
            for (std::size_t a = 0; a < clen; ++a) {
              if (Ops::zero(in[a])) continue;
              for (std::size_t b = 0; b < glen; ++b)
                if (!Ops::zero(g[b])) Ops::addmul(out[a + b], in[a], g[b]);
            }
            any = true;
          }
        }
        if (!any) {
          vanished = true;
          break;
        }
        std::swap(cur, nxt);
        zc = zn;
      }
      if (!vanished)
        for (std::size_t s = p; s <= zc && s <= kd; ++s)
          for (std::size_t a = 0; a + s <= kd; ++a)
            if (!Ops::zero(cur[s * KW + a])) Ops::addmul(acc[a], weight[p][s], cur[s * KW + a]);
    }
    return acc;
  });
  std::vector<A> total(KW, A(0));
  for (const auto& a : partial)
    for (std::size_t i = 0; i < KW; ++i) total[i] += a[i];
  std::vector<T> out(KW);
  for (std::size_t i = 0; i < KW; ++i) {
    if constexpr (Traits<T>::exact) {
      out[i] = Rational(total[i], total_scale);
      out[i].canonicalize();
    } else {
      out[i] = total[i];
    }
  }
  return UniPoly<T>(std::move(out));
}

template <class T>
UniPoly<T> ExpectationEngine<T>::expected(const std::vector<std::size_t>& partial) {
  const std::size_t m = inst_.m();
  const std::size_t k = inst_.k;
  require(partial.size() <= m, ErrorCode::InvalidArgument, "partial assignment longer than m");
  std::vector<std::uint32_t> assigned(k, 0);
  for (std::size_t j = 0; j < partial.size(); ++j) {
    require(partial[j] < k, ErrorCode::InvalidArgument, "part index out of range");
    assigned[partial[j]] |= 1u << j;
  }
  std::uint32_t unassigned = 0;
  for (std::size_t j = partial.size(); j < m; ++j) unassigned |= 1u << j;
  std::vector<const Table*> blocks;
  for (std::size_t i = 0; i < k; ++i) blocks.push_back(&table_for(assigned[i]));
  return combine(blocks, unassigned);
}

template <class T>
UniPoly<T> expected_charpoly(const Instance<T>& inst, const std::vector<std::size_t>& partial) {
  ExpectationEngine<T> engine(inst);
  return engine.expected(partial);
}

template <class T>
UniPoly<T> assignment_poly(const Instance<T>& inst, const std::vector<std::size_t>& assignment) {
  require(assignment.size() == inst.m(), ErrorCode::InvalidArgument, "assignment must cover every vector");
  for (std::size_t a : assignment) require(a < inst.k, ErrorCode::InvalidArgument, "part index out of range");
  auto masks = part_masks<T>(assignment, inst.k);
  UniPoly<T> out = UniPoly<T>::constant(Traits<T>::from_int(1));
  const T scale = Traits<T>::from_int(-static_cast<long>(inst.k));
  for (std::uint32_t mask : masks) {
    Vector<T> base = subset_sum(inst, mask);
    for (auto& c : base) c *= scale;
    out = out * inst.ctx.h().restrict_to_line(base, inst.ctx.e());
  }
  return out;
}

template <class T>
UniPoly<T> brute_force_expected(const Instance<T>& inst, const std::vector<std::size_t>& partial) {
  const std::size_t m = inst.m();
  const std::size_t k = inst.k;
  const std::size_t free = m - partial.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < free; ++i) {
    count *= k;
    require(count <= 1000000, ErrorCode::BudgetExceeded, "brute-force expectation over more than 1e6 completions");
  }
  UniPoly<T> sum;
  std::vector<std::size_t> full(partial);
  full.resize(m, 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t x = idx;
    for (std::size_t j = partial.size(); j < m; ++j) {
      full[j] = x % k;
      x /= k;
    }
    sum += assignment_poly(inst, full);
  }
  T inv = Traits<T>::from_int(1);
  inv /= Traits<T>::from_int(static_cast<long>(count));
  return sum * inv;
}

// ---------------------------------------------------------------------------
// Greedy and exhaustive partitioners.

namespace {

template <class T>
void fill_parts(const Instance<T>& inst, PartitionCertificate& cert) {
  auto masks = part_masks<T>(cert.assignment, inst.k);
  cert.part_spectra.clear();
  cert.part_lambda_max.clear();
  std::optional<AlgebraicReal> worst_exact;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    Spectrum s = part_spectrum(inst, masks[i]);
    cert.part_spectra.push_back(s.values);
    const double top = s.values.empty() ? 0.0 : s.max();
    cert.part_lambda_max.push_back(top);
    if constexpr (Traits<T>::exact) {
      AlgebraicReal v = s.exact.empty() ? AlgebraicReal(Rational(0)) : s.exact.front();
      if (!worst_exact || compare(v, *worst_exact) > 0) {
        worst_exact = v;
        cert.worst_part = i;
      }
    } else {
      if (i == 0 || top > cert.part_lambda_max[cert.worst_part]) cert.worst_part = i;
    }
  }
  cert.max_seminorm = cert.part_lambda_max[cert.worst_part];
  cert.k = inst.k;
  cert.backend = std::string(backend_name(Traits<T>::backend));
  if constexpr (Traits<T>::exact) {
    cert.bound = partition_bound(inst.eps, inst.k, inst.m());
    cert.bound_value = cert.bound->to_double();
    cert.pass = compare(*worst_exact, *cert.bound) <= 0;
  } else {
    cert.bound_value = partition_bound(inst.eps, inst.k, inst.m());
    cert.pass = cert.max_seminorm <= cert.bound_value + 1e-9 * std::max(1.0, cert.bound_value);
  }
  cert.margin = cert.bound_value - cert.max_seminorm;
}

// Largest root used for greedy decisions: exact algebraic or float.
struct ExactRoot {
  AlgebraicReal value;
  static ExactRoot of(const QPoly& f) { return {largest_root_exact(f)}; }
  int cmp(const ExactRoot& o) const { return compare(value, o.value); }
  double to_double() const { return value.to_double(); }
};

struct FloatRoot {
  double value;
  static FloatRoot of(const FPoly& f) { return {float_real_roots(f, 1e-6).back()}; }
  int cmp(const FloatRoot& o) const {
    const double tol = 1e-12 * std::max(1.0, std::fabs(o.value));
    if (value < o.value - tol) return -1;
    if (value > o.value + tol) return 1;
    return 0;
  }
  double to_double() const { return value; }
};

template <class T>
using RootOf = std::conditional_t<ScalarTraits<T>::exact, ExactRoot, FloatRoot>;

}  // namespace

template <class T>
PartitionCertificate greedy_partition(const Instance<T>& inst) {
  using Root = RootOf<T>;
  ExpectationEngine<T> engine(inst);
  PartitionCertificate cert;
  cert.method = "greedy";
  auto evaluate = [&](const std::vector<std::size_t>& partial) {
    UniPoly<T> f = engine.expected(partial);
    try {
      return Root::of(f);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::NotRealRooted) cert.intermediates_real_rooted = false;
      throw;
    }
  };
  std::vector<std::size_t> partial;
  Root prev = evaluate(partial);
  cert.greedy_trace.push_back(prev.to_double());
  for (std::size_t j = 0; j < inst.m(); ++j) {
    std::optional<Root> best;
    std::size_t best_part = 0;
    partial.push_back(0);
    for (std::size_t i = 0; i < inst.k; ++i) {
      partial.back() = i;
      Root r = evaluate(partial);
      if (!best || r.cmp(*best) < 0) {
        best = r;
        best_part = i;
      }
    }
    partial.back() = best_part;
    if (best->cmp(prev) > 0) cert.trace_monotone = false;
    cert.greedy_trace.push_back(best->to_double());
    prev = *best;
  }
  cert.assignment = partial;
  fill_parts(inst, cert);
  return cert;
}

template <class T>
PartitionCertificate exhaustive_partition(const Instance<T>& inst, std::size_t budget) {
  const std::size_t m = inst.m();
  const std::size_t k = inst.k;
  std::size_t total = 1;
  for (std::size_t j = 0; j < m; ++j) {
    total *= k;
    if (total > budget) fail(ErrorCode::BudgetExceeded, "k^m exceeds the exhaustive budget");
  }
  PartitionCertificate cert;
  cert.method = "exhaustive";
  if (k == 1) {
    cert.assignment.assign(m, 0);
    fill_parts(inst, cert);
    return cert;
  }
  // Rank every subset by its largest eigenvalue, then enumerate on ranks.
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<std::uint32_t> rank_of(subsets, 0);
  if constexpr (Traits<T>::exact) {
    auto values = parallel_map(subsets, [&](std::size_t s) {
      return lambda_max(inst.ctx, subset_sum(inst, static_cast<std::uint32_t>(s)));
    });
    std::vector<std::uint32_t> order(subsets);
    for (std::size_t s = 0; s < subsets; ++s) order[s] = static_cast<std::uint32_t>(s);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return compare(values[a], values[b]) < 0; });
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < subsets; ++i) {
      if (i > 0 && compare(values[order[i - 1]], values[order[i]]) < 0) ++r;
      rank_of[order[i]] = r;
    }
  } else {
    auto values = parallel_map(subsets, [&](std::size_t s) {
      Spectrum sp = part_spectrum(inst, static_cast<std::uint32_t>(s));
      return sp.values.empty() ? 0.0 : sp.max();
    });
    std::vector<std::uint32_t> order(subsets);
    for (std::size_t s = 0; s < subsets; ++s) order[s] = static_cast<std::uint32_t>(s);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < subsets; ++i) {
      if (i > 0 && values[order[i - 1]] < values[order[i]]) ++r;
      rank_of[order[i]] = r;
    }
  }
  // Vector 0 is the most significant digit, so increasing index is lexicographic.
  const std::size_t chunks = std::min<std::size_t>(total, 64);
  const std::size_t per = (total + chunks - 1) / chunks;
  auto best = parallel_map(chunks, [&](std::size_t c) {
    std::pair<std::uint32_t, std::size_t> out{UINT32_MAX, 0};
    std::vector<std::uint32_t> masks(k);
    for (std::size_t idx = c * per; idx < std::min(total, (c + 1) * per); ++idx) {
      std::fill(masks.begin(), masks.end(), 0u);
      std::size_t x = idx;
      for (std::size_t j = m; j-- > 0;) {
        masks[x % k] |= 1u << j;
        x /= k;
      }
      std::uint32_t worst = 0;
      for (std::uint32_t mk : masks) worst = std::max(worst, rank_of[mk]);
      if (worst < out.first) out = {worst, idx};
    }
    return out;
  });
  auto winner = *std::min_element(best.begin(), best.end());
  cert.assignment.assign(m, 0);
  std::size_t x = winner.second;
  for (std::size_t j = m; j-- > 0;) {
    cert.assignment[j] = x % k;
    x /= k;
  }
  fill_parts(inst, cert);
  return cert;
}

template <class T>
VerifyReport verify_certificate(const Instance<T>& inst, const PartitionCertificate& cert, double tol) {
  if (cert.assignment.size() != inst.m())
    fail(ErrorCode::Malformed, "assignment does not cover every vector exactly once");
  if (cert.k != inst.k) fail(ErrorCode::Malformed, "certificate k differs from the instance");
  for (std::size_t j = 0; j < cert.assignment.size(); ++j)
    if (cert.assignment[j] >= inst.k)
      throw Error(ErrorCode::Malformed, "part index out of range").with_witness({std::to_string(j)});

  PartitionCertificate fresh;
  fresh.assignment = cert.assignment;
  fill_parts(inst, fresh);
  VerifyReport r;
  r.pass = fresh.pass;
  r.part_lambda_max = fresh.part_lambda_max;
  r.max_seminorm = fresh.max_seminorm;
  r.bound_value = fresh.bound_value;
  r.margin = fresh.margin;
  if constexpr (Traits<T>::exact) r.trivial_pass = compare(*fresh.bound, Rational(1)) >= 0;
  else r.trivial_pass = fresh.bound_value >= 1.0;
  r.consistent = cert.pass == fresh.pass && cert.part_lambda_max.size() == fresh.part_lambda_max.size();
  for (std::size_t i = 0; r.consistent && i < fresh.part_lambda_max.size(); ++i)
    r.consistent = std::fabs(cert.part_lambda_max[i] - fresh.part_lambda_max[i]) <=
                   tol * std::max(1.0, std::fabs(fresh.part_lambda_max[i]));
  if (r.trivial_pass) r.note = "trivial-pass";
  else if (!r.pass) r.note = "bound violated";
  return r;
}

#define HYPERLACE_INSTANTIATE(T)                                                                          \
  template Instance<T> make_instance(HyperbolicContext<T>, std::vector<Vector<T>>, std::size_t, std::string); \
  template Instance<T> direct_sum(const std::vector<Instance<T>>&);                                       \
  template class ExpectationEngine<T>;                                                                    \
  template UniPoly<T> expected_charpoly(const Instance<T>&, const std::vector<std::size_t>&);             \
  template UniPoly<T> brute_force_expected(const Instance<T>&, const std::vector<std::size_t>&);          \
  template UniPoly<T> assignment_poly(const Instance<T>&, const std::vector<std::size_t>&);               \
  template PartitionCertificate greedy_partition(const Instance<T>&);                                     \
  template PartitionCertificate exhaustive_partition(const Instance<T>&, std::size_t);                    \
  template VerifyReport verify_certificate(const Instance<T>&, const PartitionCertificate&, double);

HYPERLACE_INSTANTIATE(Rational)
HYPERLACE_INSTANTIATE(double)

}  // namespace hyperlace
