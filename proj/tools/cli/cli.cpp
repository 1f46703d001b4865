#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "acceptance.hpp"
#include "hyperlace/common/error.hpp"
#include "hyperlace/io/json.hpp"
#include "hyperlace/mixedchar/mixed.hpp"
#include "hyperlace/partition/partition.hpp"
#include "hyperlace/rayleigh/rayleigh.hpp"
#include "hyperlace/sharpness/sharpness.hpp"

namespace hyperlace::cli {

namespace {

struct Global {
  std::uint64_t seed = 0;
  std::string backend = "auto";
  std::string tol;
  std::size_t budget = 0;
  std::string out;
};

// Where a hyperbolic context comes from.
struct ContextSource {
  std::string poly_file;
  std::string context_file;
  std::string builtin;
  std::string direction;
  std::string strategy = "auto";
  std::size_t samples = 200;

  bool given() const { return !poly_file.empty() || !context_file.empty() || !builtin.empty(); }
};

struct MeasureSource {
  std::string measure_file;
  std::string edges_file;
  std::string uniform;  // "d,n"
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "bad JSON in '" + path + "'").with_witness({e.what()});
  }
}

// Accepts a bare document or a report from an earlier invocation; `nested`
// names the field of the report's result holding the document.
Json read_payload(const std::string& path, const char* nested = nullptr) {
  Json j = read_json(path);
  if (j.is_object() && j.contains("tool") && j.contains("result")) {
    Json r = j.at("result");
    if (nested && r.is_object() && r.contains(nested)) return r.at(nested);
    return r;
  }
  return j;
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> out;
  for (const auto& q : parse_vector(csv)) {
    if (q.get_den() != 1 || sgn(q) < 0) fail(ErrorCode::ParseError, "expected nonnegative integers in '" + csv + "'");
    out.push_back(q.get_num().get_ui());
  }
  return out;
}

Vector<Rational> identity_flat(std::size_t d) {
  Vector<Rational> v(d * (d + 1) / 2, Rational(0));
  for (std::size_t i = 0; i < d; ++i) v[sym_index(d, i, i)] = 1;
  return v;
}

// "product:N", "esym:N:D", "lorentz:N", "det:D"
std::pair<QMultiPoly, Vector<Rational>> builtin_poly(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto num = [&](std::size_t i) -> std::size_t {
    if (i >= parts.size()) fail(ErrorCode::ParseError, "builtin '" + spec + "' is missing a size");
    return parse_sizes(parts[i]).at(0);
  };
  const std::string& name = parts.empty() ? spec : parts[0];
  if (name == "product") return {coordinate_product(num(1)), ones<Rational>(num(1))};
  if (name == "esym") return {elementary_symmetric(num(1), num(2)), ones<Rational>(num(1))};
  if (name == "lorentz") {
    Vector<Rational> e(num(1), Rational(0));
    e[0] = 1;
    return {lorentz(num(1)), e};
  }
  if (name == "det") return {symmetric_determinant(num(1)), identity_flat(num(1))};
  fail(ErrorCode::ParseError, "unknown builtin '" + spec + "' (product:N, esym:N:D, lorentz:N, det:D)");
}

CertifyStrategy make_strategy(const ContextSource& src, std::uint64_t seed) {
  CertifyStrategy s;
  s.seed = seed;
  s.samples = src.samples;
  if (src.strategy == "structural")
    s.kind = CertifyStrategy::Kind::Structural;
  else if (src.strategy == "sampled")
    s.kind = CertifyStrategy::Kind::Sampled;
  else if (src.strategy != "auto")
    fail(ErrorCode::ParseError, "strategy must be auto, structural or sampled");
  return s;
}

Backend resolve_backend(const Global& g, const Json* doc) {
  if (g.backend != "auto") return parse_backend(g.backend);
  if (doc && doc->is_object() && doc->contains("backend")) return parse_backend(doc->at("backend").get<std::string>());
  return Backend::Rational;
}

// Polynomial and direction from the source, in exact arithmetic.
QContext load_qcontext(const ContextSource& src, const Global& g) {
  if (!src.given()) fail(ErrorCode::InvalidArgument, "need --poly, --context or --builtin");
  if (!src.context_file.empty()) return context_from_json<Rational>(read_payload(src.context_file));
  QMultiPoly h;
  Vector<Rational> e;
  if (!src.builtin.empty()) {
    std::tie(h, e) = builtin_poly(src.builtin);
  } else {
    h = poly_from_json<Rational>(read_json(src.poly_file));
    e = ones<Rational>(h.nvars());
  }
  if (!src.direction.empty()) e = parse_vector(src.direction);
  return certify_hyperbolic(h, e, make_strategy(src, g.seed));
}

FContext load_fcontext(const ContextSource& src, const Global& g) {
  if (!src.context_file.empty()) {
    Json j = read_payload(src.context_file);
    if (j.contains("poly") && j["poly"].value("backend", "rational") == "float") return context_from_json<double>(j);
  }
  if (!src.poly_file.empty()) {
    Json j = read_json(src.poly_file);
    if (j.value("backend", "rational") == "float") {
      FMultiPoly h = poly_from_json<double>(j);
      Vector<double> e = src.direction.empty() ? ones<double>(h.nvars()) : to_double(parse_vector(src.direction));
      return certify_hyperbolic(h, e, make_strategy(src, g.seed));
    }
  }
  QContext q = load_qcontext(src, g);
  return certify_hyperbolic(to_double(q.h()), to_double(q.e()), make_strategy(src, g.seed));
}

std::vector<Vector<Rational>> load_vectors(const std::string& file, const std::vector<std::string>& inline_vs) {
  std::vector<Vector<Rational>> vs;
  if (!file.empty()) {
    Json j = read_json(file);
    const Json& arr = j.is_object() ? j.at("vectors") : j;
    for (const auto& v : arr) vs.push_back(vector_from_json<Rational>(v));
  }
  for (const auto& s : inline_vs) vs.push_back(parse_vector(s));
  if (vs.empty()) fail(ErrorCode::InvalidArgument, "need --vectors or --v");
  return vs;
}

DiscreteMeasure load_measure(const MeasureSource& src) {
  if (!src.measure_file.empty()) return measure_from_json(read_payload(src.measure_file));
  if (!src.edges_file.empty()) {
    std::size_t vertices = 0;
    auto edges = parse_edge_list(read_file(src.edges_file), vertices);
    auto trees = spanning_trees(vertices, edges);
    if (trees.empty()) fail(ErrorCode::InvalidArgument, "graph has no spanning tree");
    return uniform_measure(edges.size(), trees);
  }
  if (!src.uniform.empty()) {
    auto dn = parse_sizes(src.uniform);
    if (dn.size() != 2) fail(ErrorCode::ParseError, "--uniform takes d,n");
    return uniform_matroid_measure(dn[0], dn[1]);
  }
  fail(ErrorCode::InvalidArgument, "need --measure, --edges or --uniform");
}

Json context_summary(const QContext& ctx) {
  const Certification& c = ctx.certification();
  return {{"family", family_name(c.family)}, {"strategy", c.strategy}, {"samples", c.samples}, {"seed", c.seed},
          {"degree", ctx.degree()}, {"nvars", ctx.nvars()}};
}

Json root_list(const QPoly& f) {
  Json roots = Json::array();
  for (const auto& r : real_roots_descending(f)) roots.push_back(r.to_double());
  return roots;
}

// --- subcommand bodies -------------------------------------------------------

struct Args {
  Global g;
  ContextSource ctx;
  MeasureSource measure;
  std::string x;
  std::string vectors_file;
  std::vector<std::string> inline_vectors;
  std::string alpha;
  std::string eps;
  std::size_t m = 0;
  std::size_t k = 2;
  bool k_given = false;
  std::string instance_file;
  std::string standard;
  std::string det;
  std::string method = "greedy";
  std::string verify_file;
  bool emit_instance = false;
  std::size_t dmax = 200;
  std::string dlist;
  std::string format = "csv";
  bool corrupt_jacobi = false;
  std::string only;
};

Json cmd_certify(const Args& a) {
  Backend b = resolve_backend(a.g, nullptr);
  if (b == Backend::Float) return context_to_json(load_fcontext(a.ctx, a.g));
  return context_to_json(load_qcontext(a.ctx, a.g));
}

double as_double(double x) { return x; }
double as_double(const AlgebraicReal& x) { return x.to_double(); }

template <class T>
Json spectrum_report(const HyperbolicContext<T>& ctx, const Vector<T>& x) {
  Json r = {{"spectrum", spectrum_to_json(spectrum(ctx, x))},
            {"trace", scalar_to_json(trace(ctx, x))},
            {"rank", rank(ctx, x)},
            {"seminorm", as_double(seminorm(ctx, x))}};
  try {
    r["in_open_cone"] = cone_membership(ctx, x, ConeMode::Open);
    r["in_closed_cone"] = cone_membership(ctx, x, ConeMode::Closed);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BoundaryUndecided) throw;
    r["in_open_cone"] = "boundary-undecided";
    r["in_closed_cone"] = "boundary-undecided";
  }
  r["in_lineality_space"] = in_lineality_space(ctx, x);
  r["comparison"] = ScalarTraits<T>::exact ? "exact" : "tolerance";
  return r;
}

Json cmd_spectrum(const Args& a) {
  if (a.x.empty()) fail(ErrorCode::InvalidArgument, "need --x");
  if (resolve_backend(a.g, nullptr) == Backend::Float) {
    FContext ctx = load_fcontext(a.ctx, a.g);
    return spectrum_report(ctx, to_double(parse_vector(a.x)));
  }
  QContext ctx = load_qcontext(a.ctx, a.g);
  return spectrum_report(ctx, parse_vector(a.x));
}

void require_exact(const Args& a, const char* what) {
  if (resolve_backend(a.g, nullptr) == Backend::Float)
    fail(ErrorCode::BackendMismatch, std::string(what) + " runs on the rational backend only");
}

Json cmd_mixedchar(const Args& a) {
  require_exact(a, "mixedchar");
  QContext ctx = load_qcontext(a.ctx, a.g);
  auto vs = load_vectors(a.vectors_file, a.inline_vectors);
  QPoly chi = mixed_char_poly(ctx, vs);
  RootBracket top = largest_root_bracket(chi);
  return {{"context", context_summary(ctx)},
          {"m", vs.size()},
          {"chi", unipoly_to_json(chi)},
          {"real_rooted", true},
          {"roots", root_list(chi)},
          {"largest_root", bracket_to_json(top)},
          {"comparison", "exact"}};
}

Json cmd_bound(const Args& a) {
  require_exact(a, "bound");
  Json r = Json::object();
  if (!a.alpha.empty()) {
    if (a.m == 0) fail(ErrorCode::InvalidArgument, "need --m");
    r["delta"] = surd_to_json(delta_bound(parse_rational(a.alpha), a.m));
    DeltaGridCheck g = delta_infimum_check(parse_rational(a.alpha), a.m);
    r["infimum_check"] = {{"grid_min", g.grid_min}, {"argmin", g.argmin}, {"never_below", g.never_below},
                          {"attains", g.attains}};
  }
  if (a.ctx.given()) {
    if (a.eps.empty()) fail(ErrorCode::InvalidArgument, "need --eps with a context");
    QContext ctx = load_qcontext(a.ctx, a.g);
    auto vs = load_vectors(a.vectors_file, a.inline_vectors);
    BoundReport b = mainbound_check(ctx, vs, parse_rational(a.eps));
    r["main_bound"] = {{"m", b.m},
                       {"eps", to_string(b.eps)},
                       {"largest_root", bracket_to_json(b.largest_root)},
                       {"bound", surd_to_json(b.bound)},
                       {"margin", b.margin},
                       {"pass", b.pass},
                       {"comparison", "exact"}};
  }
  if (r.empty()) fail(ErrorCode::InvalidArgument, "need --alpha/--m or a context with --vectors and --eps");
  return r;
}

template <class T>
Json partition_report(const Instance<T>& inst, const Args& a, int& exit_code) {
  if (a.emit_instance) return instance_to_json(inst);
  Json r = {{"instance", {{"kind", inst.kind}, {"m", inst.m()}, {"k", inst.k}, {"eps", scalar_to_json(inst.eps)}}}};
  if (!a.verify_file.empty()) {
    PartitionCertificate cert = certificate_from_json(read_payload(a.verify_file, "certificate"));
    VerifyReport v = verify_certificate(inst, cert);
    if (!v.pass || !v.consistent) exit_code = kExitFailed;
    r["verify"] = verify_to_json(v);
    return r;
  }
  PartitionCertificate cert;
  if (a.method == "greedy")
    cert = greedy_partition(inst);
  else if (a.method == "exhaustive")
    cert = a.g.budget ? exhaustive_partition(inst, a.g.budget) : exhaustive_partition(inst);
  else
    fail(ErrorCode::InvalidArgument, "method must be greedy or exhaustive");
  if (!cert.pass) exit_code = kExitFailed;
  r["certificate"] = certificate_to_json(cert);
  return r;
}

Json cmd_partition(const Args& a, int& exit_code) {
  std::size_t k = a.k;
  if (!a.det.empty()) {
    auto dm = parse_sizes(a.det);
    if (dm.size() != 2) fail(ErrorCode::ParseError, "--det takes d,m");
    return partition_report(determinant_rank1(dm[0], dm[1], k, a.g.seed), a, exit_code);
  }
  if (!a.standard.empty()) {
    auto nd = parse_sizes(a.standard);
    if (nd.size() != 2) fail(ErrorCode::ParseError, "--standard takes n,d");
    return partition_report(standard_basis(nd[0], nd[1], k), a, exit_code);
  }
  if (a.instance_file.empty()) fail(ErrorCode::InvalidArgument, "need --instance, --standard or --det");
  Json doc = read_payload(a.instance_file);
  const Json* poly = doc.contains("context") && doc["context"].contains("poly") ? &doc["context"]["poly"] : nullptr;
  if (resolve_backend(a.g, poly) == Backend::Float) {
    FInstance inst = instance_from_json<double>(doc);
    if (a.k_given) inst = make_instance(inst.ctx, inst.us, k, inst.kind);
    return partition_report(inst, a, exit_code);
  }
  QInstance inst = instance_from_json<Rational>(doc);
  if (a.k_given) inst = make_instance(inst.ctx, inst.us, k, inst.kind);
  return partition_report(inst, a, exit_code);
}

Json cmd_explore(const Args& a, int& exit_code) {
  require_exact(a, "explore");
  if (a.eps.empty() || a.m == 0) fail(ErrorCode::InvalidArgument, "need --eps and --m");
  QContext ctx = load_qcontext(a.ctx, a.g);
  ExploreReport e = central_explore(ctx, parse_rational(a.eps), a.m, a.g.budget ? a.g.budget : 200, a.g.seed);
  if (e.exceeds_candidate || e.exceeds_delta) exit_code = kExitFailed;
  Json best = Json::array(), cand = Json::array();
  for (const auto& v : e.best) best.push_back(vector_to_json(v));
  for (const auto& v : e.candidate) cand.push_back(vector_to_json(v));
  return {{"label", e.label},
          {"eps", to_string(e.eps)},
          {"m", e.m},
          {"seed", e.seed},
          {"budget", e.budget},
          {"evaluations", e.evaluations},
          {"best", best},
          {"best_value", e.best_value},
          {"candidate_k", e.candidate_k},
          {"candidate", cand},
          {"candidate_value", e.candidate_value},
          {"delta_value", e.delta_value},
          {"exceeds_candidate", e.exceeds_candidate},
          {"exceeds_delta", e.exceeds_delta}};
}

std::vector<long> sharpness_degrees(const Args& a) {
  std::vector<long> ds;
  if (!a.dlist.empty()) {
    for (std::size_t d : parse_sizes(a.dlist)) ds.push_back(static_cast<long>(d));
    return ds;
  }
  // 1..10, then every 10 up to dmax
  for (long d = 1; d <= static_cast<long>(a.dmax); d += d < 10 ? 1 : 10) ds.push_back(d);
  if (ds.empty() || ds.back() != static_cast<long>(a.dmax)) ds.push_back(static_cast<long>(a.dmax));
  return ds;
}

Json rayleigh_summary(const RayleighContext& rc) {
  Json marginals = Json::array();
  for (std::size_t i = 0; i < rc.mu.n(); ++i) marginals.push_back(to_string(marginal(rc.mu, i)));
  return {{"n", rc.mu.n()},
          {"rank", rc.mu.rank()},
          {"support_size", rc.mu.support().size()},
          {"certification", context_summary(rc.ctx)},
          {"orthant_samples", rc.orthant_samples},
          {"marginals", marginals}};
}

Json cmd_rayleigh(const Args& a, int& exit_code) {
  DiscreteMeasure mu = load_measure(a.measure);
  CertifyStrategy s = make_strategy(a.ctx, a.g.seed);
  RayleighContext rc = certify_strong_rayleigh(mu, s);
  PartitionCertificate cert = rayleigh_partition(rc, a.k);
  if (!cert.pass) exit_code = kExitFailed;
  return {{"measure", rayleigh_summary(rc)}, {"certificate", certificate_to_json(cert)}};
}

Json cmd_pack(const Args& a) {
  DiscreteMeasure mu = load_measure(a.measure);
  RayleighContext rc = certify_strong_rayleigh(mu, make_strategy(a.ctx, a.g.seed));
  PackingReport r = packing_certificate(rc, a.k);
  return {{"measure", rayleigh_summary(rc)}, {"packing", packing_to_json(r)}};
}

Json cmd_selftest(const Args& a, int& exit_code) {
  acceptance::Options opt;
  if (a.corrupt_jacobi) opt.jacobi_normalization = 2;
  if (!a.only.empty())
    for (std::size_t i : parse_sizes(a.only)) opt.only.push_back(static_cast<int>(i));
  Json criteria = Json::array();
  bool ok = true;
  for (const auto& r : acceptance::run(opt)) {
    criteria.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    ok = ok && r.pass;
  }
  if (!ok) exit_code = kExitFailed;
  return {{"pass", ok}, {"criteria", criteria}};
}

void write_output(const Global& g, const std::string& text, std::ostream& out) {
  if (g.out.empty() || g.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) fail(ErrorCode::InvalidArgument, "cannot write '" + g.out + "'");
  f << text;
}

Json config_echo(const std::string& command, const std::vector<std::string>& args, const Global& g) {
  return {{"command", command}, {"args", args}, {"seed", g.seed}, {"backend", g.backend},
          {"tol", g.tol.empty() ? "default" : g.tol}, {"budget", g.budget}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hyperbolic polynomial partitions, mixed characteristic polynomials and sharpness tables", "hyperlace"};
  app.require_subcommand(1);
  Args a;
  app.add_option("--seed", a.g.seed, "seed for sampling and search (default 0)");
  app.add_option("--backend", a.g.backend, "rational, float or auto (default: from the input, else rational)")
      ->check(CLI::IsMember({"rational", "float", "auto"}));
  app.add_option("--tol", a.g.tol, "root bracket width for sharpness tables (default 1e-12)");
  app.add_option("--budget", a.g.budget, "search budget (evaluations, assignments)");
  app.add_option("--out", a.g.out, "output file (default stdout)");
  app.set_version_flag("--version", HYPERLACE_VERSION);

  auto add_context = [&](CLI::App* s) {
    s->add_option("--poly", a.ctx.poly_file, "polynomial JSON");
    s->add_option("--context", a.ctx.context_file, "context JSON (re-certified on load)");
    s->add_option("--builtin", a.ctx.builtin, "product:N, esym:N:D, lorentz:N or det:D");
    s->add_option("--direction", a.ctx.direction, "hyperbolicity direction, comma separated");
    s->add_option("--strategy", a.ctx.strategy, "auto, structural or sampled");
    s->add_option("--samples", a.ctx.samples, "sampled certification lines (default 200)");
  };
  auto add_vectors = [&](CLI::App* s) {
    s->add_option("--vectors", a.vectors_file, "JSON array of vectors");
    s->add_option("--v", a.inline_vectors, "a vector, comma separated (repeatable)");
  };
  auto add_measure = [&](CLI::App* s) {
    s->add_option("--measure", a.measure.measure_file, "measure JSON");
    s->add_option("--edges", a.measure.edges_file, "edge list; uniform spanning-tree measure");
    s->add_option("--uniform", a.measure.uniform, "d,n: uniform measure on the bases of U(d,n)");
    s->add_option("--strategy", a.ctx.strategy, "auto, structural or sampled");
    s->add_option("--samples", a.ctx.samples, "sampled certification lines (default 200)");
    s->add_option("--k", a.k, "number of parts (default 2)");
  };

  std::vector<CLI::App*> subs;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    subs.push_back(s);
    return s;
  };
  CLI::App* certify = sub("certify", "certify a polynomial hyperbolic and print the context");
  add_context(certify);
  CLI::App* spec = sub("spectrum", "eigenvalues, trace, rank, seminorm and cone membership of x");
  add_context(spec);
  spec->add_option("--x", a.x, "point, comma separated");
  CLI::App* mixed = sub("mixedchar", "mixed characteristic polynomial of vectors in the cone");
  add_context(mixed);
  add_vectors(mixed);
  CLI::App* bound = sub("bound", "delta(alpha, m), or the main bound for vectors summing to e");
  add_context(bound);
  add_vectors(bound);
  bound->add_option("--alpha", a.alpha, "alpha for delta(alpha, m)");
  bound->add_option("--m", a.m, "number of vectors");
  bound->add_option("--eps", a.eps, "trace bound for the vectors");
  CLI::App* part = sub("partition", "partition certificate for an instance");
  part->add_option("--instance", a.instance_file, "instance JSON");
  part->add_option("--standard", a.standard, "n,d: coordinate vectors under e_d");
  part->add_option("--det", a.det, "d,m: random rank-one d x d matrices (float)");
  part->add_option("--k", a.k, "number of parts (default 2)")->each([&](const std::string&) { a.k_given = true; });
  part->add_option("--method", a.method, "greedy or exhaustive");
  part->add_option("--verify", a.verify_file, "certificate JSON to verify instead of searching");
  part->add_flag("--emit-instance", a.emit_instance, "print the instance JSON and stop");
  CLI::App* expl = sub("explore", "heuristic search for the largest mixed characteristic root");
  add_context(expl);
  expl->add_option("--eps", a.eps, "trace bound");
  expl->add_option("--m", a.m, "number of vectors");
  CLI::App* sharp = sub("sharpness", "largest Jacobi zeros against the limit and bounds");
  sharp->add_option("--k", a.k, "number of parts (default 2)");
  sharp->add_option("--eps", a.eps, "eps in (0, 1 - 1/k]");
  sharp->add_option("--dmax", a.dmax, "largest degree (default 200)");
  sharp->add_option("--d", a.dlist, "explicit degree list, comma separated");
  sharp->add_option("--format", a.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  CLI::App* ray = sub("rayleigh", "certify a constant-sum strong Rayleigh measure and partition it");
  add_measure(ray);
  CLI::App* pack = sub("pack", "disjoint-bases certificate for a strong Rayleigh measure");
  add_measure(pack);
  CLI::App* self = sub("selftest", "run the acceptance suite");
  self->add_flag("--corrupt-jacobi", a.corrupt_jacobi, "scale the Jacobi side by 2 (must fail)");
  self->add_option("--only", a.only, "criteria to run, comma separated");

  if (args.empty()) {
    err << app.help();
    return kExitUsage;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << HYPERLACE_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  Json envelope = {{"tool", "hyperlace"}, {"version", HYPERLACE_VERSION}, {"config", config_echo(command, args, a.g)}};
  int exit_code = 0;
  try {
    Json result;
    if (command == "certify") {
      result = cmd_certify(a);
    } else if (command == "spectrum") {
      result = cmd_spectrum(a);
    } else if (command == "mixedchar") {
      result = cmd_mixedchar(a);
    } else if (command == "bound") {
      result = cmd_bound(a);
    } else if (command == "partition") {
      result = cmd_partition(a, exit_code);
    } else if (command == "explore") {
      result = cmd_explore(a, exit_code);
    } else if (command == "sharpness") {
      if (a.eps.empty()) fail(ErrorCode::InvalidArgument, "need --eps");
      Rational tol = a.g.tol.empty() ? default_root_tol() : parse_rational(a.g.tol);
      auto rows = convergence_table(static_cast<long>(a.k), parse_rational(a.eps), sharpness_degrees(a), tol);
      if (a.format == "csv") {
        write_output(a.g, sharpness_csv(rows), out);
        return 0;
      }
      Json table = Json::array();
      for (const auto& r : rows)
        table.push_back({{"d", r.d}, {"m", r.m}, {"alpha", to_string(r.alpha)}, {"beta", to_string(r.beta)},
                         {"largest_zero", bracket_to_json(r.largest_zero)}, {"limit", r.limit},
                         {"lower_bound", r.lower_bound}, {"upper_bound", r.upper_bound}, {"error", r.error()}});
      result = {{"rows", table}};
    } else if (command == "rayleigh") {
      result = cmd_rayleigh(a, exit_code);
    } else if (command == "pack") {
      result = cmd_pack(a);
    } else if (command == "selftest") {
      result = cmd_selftest(a, exit_code);
    }
    envelope["result"] = result;
  } catch (const Error& e) {
    Json j = error_to_json(e);
    envelope["error"] = j["error"];
    out << envelope.dump(2) << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    envelope["error"] = {{"code", "Internal"}, {"message", e.what()}, {"witness", Json::array()}};
    out << envelope.dump(2) << "\n";
    return kExitError;
  }
  try {
    write_output(a.g, envelope.dump(2) + "\n", out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitError;
  }
  return exit_code;
}

}  // namespace hyperlace::cli
