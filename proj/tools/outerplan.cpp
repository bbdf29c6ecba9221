// outerplan: generate plane graphs, find centers with certified eccentricity
// bounds, run brute-force oracles, verify certificates, benchmark.
//
// Reports are one JSON object per line on stdout (or --out); the human summary
// goes to stderr. Exit codes: 0 ok, 1 input error, 2 infeasible g,
// 3 verification failure.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "outerplan/io.hpp"
#include "outerplan/outerplan.hpp"

namespace {

using namespace outerplan;
using nlohmann::json;

enum ExitCode { kOk = 0, kInputError = 1, kInfeasible = 2, kVerifyFailed = 3 };

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void line(const json& doc) { stream() << doc.dump() << '\n'; }

 private:
  std::ofstream file_;
};

json read_json_file(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw io::FormatError("cannot open '" + path + "'");
    in = &file;
  }
  try {
    return json::parse(*in);
  } catch (const json::parse_error& e) {
    throw io::FormatError("'" + path + "' is not a JSON document: " + std::string(e.what()));
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- generate

struct GenerateArgs {
  std::string family;
  std::int32_t g = 3;
  std::int32_t k = 3;
  std::int32_t n = 100;
  std::uint64_t seed = 1;
  std::string out;
};

json generate_document(const GenerateArgs& a) {
  json meta = {{"family", a.family}};
  if (a.family == "nested") {
    meta["params"] = {{"g", a.g}, {"k", a.k}};
    if (a.k % 2 == 1) meta["expected"] = {{"fse_lower", (a.k + 3) / 2}};
    return io::graph_to_json(gen_nested_cycles(a.g, a.k), meta);
  }
  if (a.family == "lowerbound-h") {
    meta["params"] = {{"g", a.g}, {"k", a.k}};
    meta["expected"] = {{"fse_lower", (a.k + 3) / 2}, {"girth", a.g}};
    return io::graph_to_json(gen_lowerbound_H(a.g, a.k), meta);
  }
  if (a.family == "prism") {
    meta["params"] = {{"k", a.k}};
    meta["expected"] = {{"diameter_upper", 3 * a.k + 1}, {"radius_lower", 2 * a.k}};
    PrismGrid p = gen_prism_grid_with_coordinates(a.k);
    meta["coordinates"] = p.coordinates;
    meta["copy"] = p.copy;
    return io::graph_to_json(p.graph, meta);
  }
  if (a.family == "random") {
    meta["params"] = {{"n", a.n}, {"seed", a.seed}};
    return io::graph_to_json(gen_random_triangulation(a.n, a.seed), meta);
  }
  throw io::FormatError("unknown family '" + a.family + "' (nested, lowerbound-h, prism, random)");
}

int cmd_generate(const GenerateArgs& a) {
  const json doc = generate_document(a);
  Output out(a.out);
  out.line(doc);
  std::cerr << "generated " << a.family << ": n = " << doc["n"] << ", m = " << doc["edges"].size() << '\n';
  return kOk;
}

// ---- center

struct CenterArgs {
  std::string graph;
  std::string g = "auto";
  std::string mode = "girth";
  std::string out;
};

std::optional<std::int32_t> parse_g(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < 1) throw io::FormatError("--g must be 'auto' or a positive integer");
  return value;
}

CenterCertificate compute_certificate(const PlaneGraph& g, std::optional<std::int32_t> param, const std::string& mode) {
  const PlaneGraph connected = connect_components(g);
  const PeelDecomposition dec = decompose(connected);
  CenterCertificate c;
  if (mode == "diameter")
    c = find_center_diameter(dec.augmentation, dec.tree);
  else if (param)
    c = find_center(dec.augmentation, dec.tree, *param);
  else
    c = find_center_auto(dec.augmentation, dec.tree);
  return attach_outerface(g, c);
}

int cmd_center(const CenterArgs& a) {
  if (a.mode != "girth" && a.mode != "diameter") throw io::FormatError("--mode must be girth or diameter");
  const auto param = parse_g(a.g);
  const PlaneGraph g = io::graph_from_json(read_json_file(a.graph));
  const auto t0 = std::chrono::steady_clock::now();
  const CenterCertificate c = compute_certificate(g, param, a.mode);
  const double elapsed = seconds_since(t0);
  Output out(a.out);
  out.line({{"command", "center"},
            {"input", a.graph},
            {"n", g.vertex_count()},
            {"certificate", io::certificate_to_json(c)},
            {"seconds", elapsed}});
  std::cerr << "center s = " << c.s << ", eccentricity bound " << c.bound << " (" << c.case_label
            << ", g = " << c.g << "), outerface " << *c.outerface << " with peel bound " << *c.outerface_bound
            << '\n';
  return kOk;
}

// ---- oracle

struct OracleArgs {
  std::string graph;
  double budget = 0;
  std::int32_t threads = 0;
  std::string out;
};

json oracle_to_json(const OracleReport& r) {
  json doc = {{"fse_outerplanarity", r.fse_outerplanarity},
              {"best_outerface", r.best_outerface},
              {"truncated", r.truncated},
              {"seconds", r.seconds}};
  if (r.radius) {
    doc["radius"] = *r.radius;
    doc["diameter"] = *r.diameter;
    doc["center"] = *r.center;
    doc["eccentricities"] = r.eccentricities;
  }
  // null: no fence up to the length limit
  if (r.fence_girth_computed) doc["fence_girth"] = r.fence_girth ? json(*r.fence_girth) : json(nullptr);
  return doc;
}

int cmd_oracle(const OracleArgs& a) {
  const PlaneGraph g = io::graph_from_json(read_json_file(a.graph));
  OracleOptions opt;
  opt.threads = a.threads > 0 ? a.threads : default_thread_count();
  if (a.budget > 0) opt.budget_seconds = a.budget;
  const OracleReport r = run_oracle(g, opt);
  Output out(a.out);
  out.line({{"command", "oracle"}, {"input", a.graph}, {"n", g.vertex_count()}, {"oracle", oracle_to_json(r)}});
  std::cerr << "fse-outerplanarity " << r.fse_outerplanarity << " at face " << r.best_outerface;
  if (r.radius) std::cerr << ", radius " << *r.radius << ", diameter " << *r.diameter;
  if (!r.truncated.empty()) std::cerr << " (budget exhausted, " << r.truncated.size() << " stage(s) skipped)";
  std::cerr << '\n';
  return kOk;
}

// ---- verify

struct VerifyArgs {
  std::string graph;
  std::string certificate;
  std::string out;
};

json verdict(const std::string& check, bool passed, json value = nullptr) {
  json v = {{"check", check}, {"passed", passed}};
  if (!value.is_null()) v["value"] = std::move(value);
  return v;
}

int cmd_verify(const VerifyArgs& a) {
  const json graph_doc = read_json_file(a.graph);
  const PlaneGraph g = io::graph_from_json(graph_doc);
  json cert_doc = read_json_file(a.certificate);
  // accept a bare certificate or a center report line
  if (cert_doc.is_object() && cert_doc.contains("certificate")) cert_doc = cert_doc["certificate"];
  const CenterCertificate c = io::certificate_from_json(cert_doc);
  const VerifyReport r = verify_certificate(c, g);

  json verdicts = json::array();
  verdicts.push_back(verdict("eccentricity of s in H <= bound", r.eccentricity <= c.bound, r.eccentricity));
  if (r.peel_count) verdicts.push_back(verdict("peel count at outerface <= bound + 1", *r.peel_count <= c.bound + 1, *r.peel_count));
  // annotations left by the generator: known lower bounds can never exceed a valid upper bound
  const json expected = graph_doc.contains("meta") ? graph_doc["meta"].value("expected", json::object()) : json::object();
  if (r.peel_count && expected.contains("fse_lower")) {
    const std::int64_t lower = expected["fse_lower"].get<std::int64_t>();
    verdicts.push_back(verdict("peel count >= generator's fse lower bound", *r.peel_count >= lower, *r.peel_count));
  }
  if (expected.contains("radius_lower") && g.is_connected()) {
    const std::int64_t lower = expected["radius_lower"].get<std::int64_t>();
    const std::int32_t ecc = eccentricity(g, c.s);
    verdicts.push_back(verdict("eccentricity of s in G >= generator's radius lower bound", ecc >= lower, ecc));
  }
  bool passed = true;
  for (const json& v : verdicts) passed = passed && v["passed"].get<bool>();

  Output out(a.out);
  out.line({{"command", "verify"},
            {"input", a.graph},
            {"certificate", a.certificate},
            {"verdicts", verdicts},
            {"passed", passed}});
  for (const json& v : verdicts)
    std::cerr << (v["passed"].get<bool>() ? "PASS " : "FAIL ") << v["check"].get<std::string>() << '\n';
  if (!passed) throw VerificationFailure("certificate rejected");
  return kOk;
}

// ---- bench

struct BenchArgs {
  std::string family = "random";
  std::vector<std::int32_t> sizes;
  std::uint64_t seed = 1;
  std::int32_t g = 3;
  std::int32_t repeat = 3;
  std::string out;
};

PlaneGraph bench_instance(const BenchArgs& a, std::int32_t size) {
  if (a.family == "random") return gen_random_triangulation(size, a.seed);
  if (a.family == "prism") return gen_prism_grid(size);
  if (a.family == "nested") return connect_components(gen_nested_cycles(a.g, size));
  if (a.family == "lowerbound-h") return gen_lowerbound_H(a.g, size);
  throw io::FormatError("unknown family '" + a.family + "'");
}

int cmd_bench(const BenchArgs& a) {
  if (a.sizes.empty()) throw io::FormatError("--sizes needs at least one value");
  Output out(a.out);
  std::vector<double> per_vertex;
  for (std::int32_t size : a.sizes) {
    const PlaneGraph g = bench_instance(a, size);
    // fastest of a few runs; the first one also pays for page faults
    double elapsed = std::numeric_limits<double>::infinity();
    std::int64_t bound = 0;
    for (std::int32_t r = 0; r < std::max(1, a.repeat); ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const PeelDecomposition dec = decompose(g);
      const CenterCertificate c = find_center_auto(dec.augmentation, dec.tree);
      elapsed = std::min(elapsed, seconds_since(t0));
      bound = c.bound;
    }
    const double each = elapsed / g.vertex_count();
    per_vertex.push_back(each);
    out.line({{"command", "bench"},
              {"family", a.family},
              {"size", size},
              {"n", g.vertex_count()},
              {"seconds", elapsed},
              {"seconds_per_vertex", each},
              {"bound", bound}});
    std::cerr << a.family << " size " << size << ": n = " << g.vertex_count() << ", " << elapsed << " s, "
              << each * 1e9 << " ns/vertex\n";
  }
  const double ratio = per_vertex.back() / per_vertex.front();
  out.line({{"command", "bench"},
            {"family", a.family},
            {"verdicts", json::array({verdict("time-per-vertex ratio last/first <= 2.5", ratio <= 2.5, ratio)})}});
  std::cerr << "time-per-vertex ratio " << ratio << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outerplanarity and radius bounds for plane graphs"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a generated plane graph");
  generate->add_option("family", gen.family, "nested | lowerbound-h | prism | random")->required();
  generate->add_option("--g", gen.g, "cycle length / girth parameter");
  generate->add_option("--k", gen.k, "number of cycles / prism size");
  generate->add_option("--n", gen.n, "vertex count (random)");
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--out", gen.out, "output file (default stdout)");

  CenterArgs cen;
  auto* center = app.add_subcommand("center", "Find a center vertex with a certified eccentricity bound");
  center->add_option("graph", cen.graph, "graph file, - for stdin")->required();
  center->add_option("--g", cen.g, "girth parameter: auto or a positive integer");
  center->add_option("--mode", cen.mode, "girth | diameter");
  center->add_option("--out", cen.out, "report file (default stdout)");

  OracleArgs ora;
  auto* oracle = app.add_subcommand("oracle", "Brute-force fse-outerplanarity, radius, diameter, fence-girth");
  oracle->add_option("graph", ora.graph, "graph file, - for stdin")->required();
  oracle->add_option("--budget", ora.budget, "time budget in seconds; later stages are skipped");
  oracle->add_option("--threads", ora.threads, "worker threads");
  oracle->add_option("--out", ora.out, "report file (default stdout)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Check a certificate against its graph");
  verify->add_option("graph", ver.graph, "graph file")->required();
  verify->add_option("certificate", ver.certificate, "certificate or center report")->required();
  verify->add_option("--out", ver.out, "report file (default stdout)");

  BenchArgs ben;
  auto* bench = app.add_subcommand("bench", "Time the center pipeline across sizes");
  bench->add_option("--family", ben.family, "random | prism | nested | lowerbound-h");
  bench->add_option("--sizes", ben.sizes, "instance sizes (n for random, k otherwise)")->delimiter(',');
  bench->add_option("--seed", ben.seed, "random seed");
  bench->add_option("--g", ben.g, "cycle length for nested families");
  bench->add_option("--repeat", ben.repeat, "runs per size; the fastest is reported");
  bench->add_option("--out", ben.out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*center) return cmd_center(cen);
    if (*oracle) return cmd_oracle(ora);
    if (*verify) return cmd_verify(ver);
    if (*bench) return cmd_bench(ben);
  } catch (const InfeasibleParameter& e) {
    std::cerr << "infeasible parameter: " << e.what() << '\n';
    return kInfeasible;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
