#include "hyperlace/io/json.hpp"

#include <bit>

#include "hyperlace/common/error.hpp"

namespace hyperlace {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
void check_backend(const Json& j) {
  if (!j.is_object() || !j.contains("backend")) return;
  Backend b = parse_backend(j.at("backend").get<std::string>());
  if (b != ScalarTraits<T>::backend)
    fail(ErrorCode::BackendMismatch, "document backend is " + std::string(backend_name(b)));
}

std::size_t index_from_json(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(ErrorCode::ParseError, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Json subset_to_json(Subset s) {
  Json out = Json::array();
  for (std::size_t i : subset_elements(s)) out.push_back(i);
  return out;
}

Subset subset_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "a set must be an array of indices");
  std::vector<std::size_t> elems;
  for (const auto& x : j) elems.push_back(index_from_json(x));
  Subset s = subset_from(elems);
  if (static_cast<std::size_t>(std::popcount(s)) != elems.size()) fail(ErrorCode::Malformed, "repeated element in a set");
  return s;
}

QuadSurd surd_from_json(const Json& j) {
  return QuadSurd(parse_rational(field(j, "a").get<std::string>()), parse_rational(field(j, "b").get<std::string>()),
                  parse_rational(field(j, "r").get<std::string>()));
}

}  // namespace

template <class T>
Json scalar_to_json(const T& x) {
  if constexpr (std::is_same_v<T, Rational>)
    return to_string(x);
  else
    return x;
}

template <class T>
T scalar_from_json(const Json& j) {
  if (j.is_string()) return ScalarTraits<T>::parse(j.get<std::string>());
  if (j.is_number_integer()) return ScalarTraits<T>::from_int(j.get<long>());
  if (j.is_number()) {
    if constexpr (std::is_same_v<T, Rational>)
      return parse_rational(j.dump());
    else
      return j.get<double>();
  }
  fail(ErrorCode::ParseError, "expected a number or a rational string");
}

template <class T>
Json vector_to_json(const Vector<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

template <class T>
Vector<T> vector_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "expected an array");
  Vector<T> out;
  for (const auto& x : j) out.push_back(scalar_from_json<T>(x));
  return out;
}

template <class T>
Json poly_to_json(const MultiPoly<T>& p) {
  Json terms = Json::array();
  for (const auto& [exp, c] : p.terms()) terms.push_back({{"exp", exp}, {"coef", scalar_to_json(c)}});
  return {{"nvars", p.nvars()}, {"backend", backend_name(ScalarTraits<T>::backend)}, {"terms", terms}};
}

template <class T>
MultiPoly<T> poly_from_json(const Json& j) {
  check_backend<T>(j);
  std::size_t n = index_from_json(field(j, "nvars"));
  typename MultiPoly<T>::Terms terms;
  for (const auto& t : field(j, "terms")) {
    Exponent exp;
    for (const auto& e : field(t, "exp")) exp.push_back(static_cast<std::uint16_t>(index_from_json(e)));
    if (exp.size() != n) fail(ErrorCode::DimensionMismatch, "exponent length differs from nvars");
    T c = scalar_from_json<T>(field(t, "coef"));
    auto [it, fresh] = terms.emplace(exp, c);
    if (!fresh) it->second += c;
  }
  return MultiPoly<T>(n, std::move(terms));
}

template <class T>
Json unipoly_to_json(const UniPoly<T>& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(scalar_to_json(c));
  return {{"backend", backend_name(ScalarTraits<T>::backend)}, {"coeffs", coeffs}};
}

template <class T>
UniPoly<T> unipoly_from_json(const Json& j) {
  check_backend<T>(j);
  return UniPoly<T>(vector_from_json<T>(field(j, "coeffs")));
}

Json surd_to_json(const QuadSurd& x) {
  return {{"exact", x.to_string()},
          {"a", to_string(x.rational_part())},
          {"b", to_string(x.radical_coeff())},
          {"r", to_string(x.radicand())},
          {"value", x.to_double()}};
}

Json bracket_to_json(const RootBracket& b) {
  return {{"lo", to_string(b.lo)}, {"hi", to_string(b.hi)}, {"value", b.midpoint().get_d()}};
}

Json spectrum_to_json(const Spectrum& s) {
  Json out = {{"values", s.values}, {"exact", s.is_exact() && !s.exact.empty()}};
  if (!s.exact.empty()) {
    Json brackets = Json::array();
    for (AlgebraicReal a : s.exact) {
      a.refine_to(default_root_tol());
      brackets.push_back({{"lo", to_string(a.lo())}, {"hi", to_string(a.hi())}});
    }
    out["brackets"] = brackets;
  }
  return out;
}

Json error_to_json(const Error& e) {
  return {{"error", {{"code", error_code_name(e.code())}, {"message", e.what()}, {"witness", e.witness()}}}};
}

template <class T>
Json context_to_json(const HyperbolicContext<T>& ctx) {
  const Certification& c = ctx.certification();
  return {{"poly", poly_to_json(ctx.h())},
          {"direction", vector_to_json(ctx.e())},
          {"degree", ctx.degree()},
          {"certification",
           {{"strategy", c.strategy},
            {"family", family_name(c.family)},
            {"samples", c.samples},
            {"seed", c.seed},
            {"evidence", c.evidence}}}};
}

template <class T>
HyperbolicContext<T> context_from_json(const Json& j) {
  MultiPoly<T> h = poly_from_json<T>(field(j, "poly"));
  Vector<T> e = vector_from_json<T>(field(j, "direction"));
  CertifyStrategy strategy;
  if (j.contains("certification")) {
    const Json& c = j.at("certification");
    if (c.contains("samples")) strategy.samples = std::max<std::size_t>(1, c.at("samples").get<std::size_t>());
    if (c.contains("seed")) strategy.seed = c.at("seed").get<std::uint64_t>();
  }
  return certify_hyperbolic(h, e, strategy);
}

template <class T>
Json instance_to_json(const Instance<T>& inst) {
  Json vs = Json::array();
  for (const auto& u : inst.us) vs.push_back(vector_to_json(u));
  return {{"kind", inst.kind}, {"k", inst.k}, {"eps", scalar_to_json(inst.eps)}, {"context", context_to_json(inst.ctx)},
          {"vectors", vs}};
}

template <class T>
Instance<T> instance_from_json(const Json& j) {
  HyperbolicContext<T> ctx = context_from_json<T>(field(j, "context"));
  std::vector<Vector<T>> us;
  for (const auto& v : field(j, "vectors")) us.push_back(vector_from_json<T>(v));
  std::size_t k = j.contains("k") ? index_from_json(j.at("k")) : 2;
  std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "custom";
  return make_instance(std::move(ctx), std::move(us), k, kind);
}

Json certificate_to_json(const PartitionCertificate& cert) {
  Json out = {{"method", cert.method},
              {"backend", cert.backend},
              {"k", cert.k},
              {"assignment", cert.assignment},
              {"part_spectra", cert.part_spectra},
              {"part_lambda_max", cert.part_lambda_max},
              {"worst_part", cert.worst_part},
              {"max_seminorm", cert.max_seminorm},
              {"bound_value", cert.bound_value},
              {"margin", cert.margin},
              {"pass", cert.pass},
              {"comparison", cert.bound ? "exact" : "tolerance"},
              {"greedy_trace", cert.greedy_trace},
              {"trace_monotone", cert.trace_monotone},
              {"intermediates_real_rooted", cert.intermediates_real_rooted}};
  if (cert.bound) out["bound"] = surd_to_json(*cert.bound);
  return out;
}

PartitionCertificate certificate_from_json(const Json& j) {
  PartitionCertificate c;
  try {
    c.method = j.value("method", std::string("unknown"));
    c.backend = j.value("backend", std::string("rational"));
    c.k = field(j, "k").get<std::size_t>();
    c.assignment = field(j, "assignment").get<std::vector<std::size_t>>();
    c.part_spectra = j.value("part_spectra", std::vector<std::vector<double>>{});
    c.part_lambda_max = j.value("part_lambda_max", std::vector<double>{});
    c.worst_part = j.value("worst_part", std::size_t{0});
    c.max_seminorm = j.value("max_seminorm", 0.0);
    c.bound_value = j.value("bound_value", 0.0);
    c.margin = j.value("margin", 0.0);
    c.pass = j.value("pass", false);
    c.greedy_trace = j.value("greedy_trace", std::vector<double>{});
    c.trace_monotone = j.value("trace_monotone", true);
    c.intermediates_real_rooted = j.value("intermediates_real_rooted", true);
    if (j.contains("bound")) c.bound = surd_from_json(j.at("bound"));
  } catch (const Json::exception& e) {
    fail(ErrorCode::Malformed, std::string("bad certificate: ") + e.what());
  }
  return c;
}

Json verify_to_json(const VerifyReport& r) {
  return {{"pass", r.pass},
          {"trivial_pass", r.trivial_pass},
          {"consistent", r.consistent},
          {"part_lambda_max", r.part_lambda_max},
          {"max_seminorm", r.max_seminorm},
          {"bound_value", r.bound_value},
          {"margin", r.margin},
          {"note", r.note}};
}

Json measure_to_json(const DiscreteMeasure& mu) {
  Json support = Json::array();
  for (const auto& [s, p] : mu.support()) support.push_back({{"set", subset_to_json(s)}, {"prob", to_string(p)}});
  return {{"n", mu.n()}, {"support", support}};
}

DiscreteMeasure measure_from_json(const Json& j) {
  std::size_t n = index_from_json(field(j, "n"));
  std::vector<std::pair<Subset, Rational>> support;
  for (const auto& item : field(j, "support"))
    support.emplace_back(subset_from_json(field(item, "set")), scalar_from_json<Rational>(field(item, "prob")));
  return DiscreteMeasure(n, std::move(support));
}

Json matroid_to_json(const MatroidView& m) {
  Json bases = Json::array();
  for (Subset b : m.bases()) bases.push_back(subset_to_json(b));
  return {{"n", m.n()}, {"d", m.d()}, {"bases", bases}};
}

MatroidView matroid_from_json(const Json& j) {
  std::size_t n = index_from_json(field(j, "n"));
  std::vector<Subset> bases;
  for (const auto& b : field(j, "bases")) bases.push_back(subset_from_json(b));
  return MatroidView(n, std::move(bases));
}

Json packing_to_json(const PackingReport& r) {
  Json out = {{"k", r.k},
              {"threshold", surd_to_json(r.threshold)},
              {"max_marginal", to_string(r.max_marginal)},
              {"theorem_applies", r.theorem_applies},
              {"status", r.status}};
  if (r.bases) {
    Json bs = Json::array();
    for (Subset b : *r.bases) bs.push_back(subset_to_json(b));
    out["bases"] = bs;
  } else {
    out["bases"] = nullptr;
  }
  if (r.edmonds) {
    out["edmonds"] = {{"pass", r.edmonds->pass},
                      {"witness", r.edmonds->witness ? subset_to_json(*r.edmonds->witness) : Json(nullptr)}};
  }
  return out;
}

#define HYPERLACE_INSTANTIATE(T)                                  \
  template Json scalar_to_json<T>(const T&);                      \
  template T scalar_from_json<T>(const Json&);                    \
  template Json vector_to_json<T>(const Vector<T>&);              \
  template Vector<T> vector_from_json<T>(const Json&);            \
  template Json poly_to_json<T>(const MultiPoly<T>&);             \
  template MultiPoly<T> poly_from_json<T>(const Json&);           \
  template Json unipoly_to_json<T>(const UniPoly<T>&);            \
  template UniPoly<T> unipoly_from_json<T>(const Json&);          \
  template Json context_to_json<T>(const HyperbolicContext<T>&);  \
  template HyperbolicContext<T> context_from_json<T>(const Json&); \
  template Json instance_to_json<T>(const Instance<T>&);          \
  template Instance<T> instance_from_json<T>(const Json&);

HYPERLACE_INSTANTIATE(Rational)
HYPERLACE_INSTANTIATE(double)

}  // namespace hyperlace
