// webtrace: exact web-trace computations on embedded bipartite graphs.
//
// Subcommands: verify, annulus, skein, pants, sample. Exit codes: 0 success,
// 2 input error, 3 identity mismatch, 4 unsupported surface.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "webtrace/annulus.hpp"
#include "webtrace/io.hpp"
#include "webtrace/kasteleyn.hpp"
#include "webtrace/skein3.hpp"

namespace {

using namespace webtrace;
using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitUnsupported = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::string graph_path;
  std::string multiweb_path;
  std::string connection = "identity";
  std::size_t n = 0;  // 0: take the rank from the graph document
  int m = 1;
  int height = 2;
  std::string what = "detz";
  long count = 1000;
  std::uint64_t seed = 1;
  int jobs = 1;
};

ojson exact_entry(const Rational& r) {
  return ojson{{"exact", to_string(r)}, {"decimal", to_double(r)}};
}

std::string exact_text(const Rational& r) {
  std::ostringstream ss;
  ss << to_string(r) << " (" << to_double(r) << ")";
  return ss.str();
}

void emit(const Options& opt, const ojson& report,
          const std::vector<std::string>& lines, double wall_ms) {
  if (opt.format == "machine") {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& l : lines) std::cout << l << "\n";
    std::cout << "wall_ms: " << wall_ms << "\n";
  }
}

GraphDocument load_doc(const std::string& path) {
  try {
    return load_graph_document(path);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

Connection<Rational> make_connection(const GraphDocument& doc, std::size_t n,
                                     const std::string& spec) {
  if (spec == "identity") return identity_connection(doc.graph, n);
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw InputError("bad random seed in --connection " + spec);
    }
    return random_sl(doc.graph, n, seed);
  }
  if (spec.rfind("file:", 0) == 0) {
    GraphDocument other = load_doc(spec.substr(5));
    if (!other.connection)
      throw InputError(spec.substr(5) + ": no connection block");
    if (other.connection->rank != n)
      throw InputError(spec.substr(5) + ": connection rank mismatch");
    return *other.connection;
  }
  throw InputError("--connection must be identity, random:SEED, or file:PATH");
}

int cmd_verify(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  GraphDocument doc = load_doc(opt.graph_path);
  std::size_t n = opt.n ? opt.n : doc.n;
  Connection<Rational> conn = make_connection(doc, n, opt.connection);
  VerifyReport rep = verify_main(doc.graph, n, conn);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

  ojson report;
  report["command"] = "verify";
  report["graph"] = opt.graph_path;
  report["n"] = n;
  report["connection"] = opt.connection;
  report["det"] = exact_entry(rep.det);
  report["trace_sum"] = exact_entry(rep.trace_sum);
  report["sign"] = rep.sign;
  report["match"] = rep.match;

  std::vector<std::string> lines = {
      "command: verify",
      "graph: " + opt.graph_path,
      "n: " + std::to_string(n),
      "connection: " + opt.connection,
      "det: " + exact_text(rep.det),
      "trace_sum: " + exact_text(rep.trace_sum),
      "sign: " + std::to_string(rep.sign),
      std::string("match: ") + (rep.match ? "true" : "false"),
  };
  emit(opt, report, lines, ms);
  return rep.match ? kExitOk : kExitMismatch;
}

int cmd_annulus(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  int m = opt.m, n = opt.height;
  if (m < 1 || m % 2 == 0)
    throw InputError("--m must be a positive odd integer");
  if (n < 1) throw InputError("--height must be a positive integer");

  ojson report;
  report["command"] = "annulus";
  report["m"] = m;
  report["height"] = n;
  report["what"] = opt.what;
  std::vector<std::string> lines = {
      "command: annulus",
      "m: " + std::to_string(m),
      "height: " + std::to_string(n),
      "what: " + opt.what,
  };

  if (opt.what == "detz") {
    LaurentPoly d = det_Kz(m, n);
    ojson rows = ojson::object();
    for (long e = d.min_exponent(); e <= d.max_exponent(); ++e) {
      Rational c = d.coefficient(e);
      rows["z^" + std::to_string(e)] = exact_entry(c);
      lines.push_back("z^" + std::to_string(e) + ": " + exact_text(c));
    }
    report["coefficients"] = rows;
  } else if (opt.what == "uv") {
    if (n % 2 != 0) throw InputError("--what uv needs even --height");
    MultiPoly p = det_uv(m, n);
    ojson rows = ojson::object();
    for (unsigned j = 0; j <= static_cast<unsigned>(n); ++j)
      for (unsigned k = 0; k <= static_cast<unsigned>(n); ++k) {
        Rational c = p.coefficient({j, k});
        if (is_zero(c)) continue;
        std::string key = "u^" + std::to_string(j) + " v^" + std::to_string(k);
        rows[key] = exact_entry(c);
        lines.push_back(key + ": " + exact_text(c));
      }
    report["coefficients"] = rows;
  } else if (opt.what == "pgf") {
    if (n % 2 != 0) throw InputError("--what pgf needs even --height");
    MultiPoly p = pgf(m, n);
    ojson rows = ojson::object();
    for (unsigned j = 0; j <= static_cast<unsigned>(n); ++j)
      for (unsigned k = 0; k <= static_cast<unsigned>(n); ++k) {
        Rational c = p.coefficient({j, k});
        if (is_zero(c)) continue;
        std::string key =
            "(" + std::to_string(j) + "," + std::to_string(k) + ")";
        rows[key] = exact_entry(c);
        lines.push_back(key + ": " + exact_text(c));
      }
    report["probabilities"] = rows;
  } else if (opt.what == "means") {
    if (n % 2 != 0) throw InputError("--what means needs even --height");
    Rational exact = pgf(m, n).derivative(0).evaluate({Rational(1), Rational(1)});
    report["mean_crossings"] = exact_entry(exact);
    report["finite_sum"] = mean_crossings(m, n);
    lines.push_back("mean_crossings: " + exact_text(exact));
    {
      std::ostringstream ss;
      ss << "finite_sum: " << mean_crossings(m, n);
      lines.push_back(ss.str());
    }
  } else if (opt.what == "exponents") {
    ojson rows = ojson::array();
    for (int j = 0; j <= 6; ++j)
      for (int k = 0; k <= 6; ++k) {
        long formula = crossing_exponent(j, k);
        long oracle = crossing_exponent_oracle(j, k);
        rows.push_back({{"j", j},
                        {"k", k},
                        {"formula", formula},
                        {"oracle", oracle},
                        {"agree", formula == oracle}});
        lines.push_back("(" + std::to_string(j) + "," + std::to_string(k) +
                        "): formula " + std::to_string(formula) + " oracle " +
                        std::to_string(oracle) +
                        (formula == oracle ? " ok" : " MISMATCH"));
      }
    report["exponents"] = rows;
  } else {
    throw InputError("--what must be detz, uv, pgf, means, or exponents");
  }
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  emit(opt, report, lines, ms);
  return kExitOk;
}

int cmd_skein(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  GraphDocument doc = load_doc(opt.graph_path);
  if (doc.graph.surface.kind == SurfaceKind::Pants)
    throw UnsupportedError("skein reduction expects a disk or annulus graph");
  Multiweb m;
  try {
    m = load_multiweb(opt.multiweb_path);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
  if (m.rank != 3) throw InputError("skein reduction needs a rank-3 multiweb");
  if (!is_valid_multiweb(doc.graph, m))
    throw InputError("multiweb does not satisfy the degree condition");
  ReductionResult r = reduce_annulus(doc.graph, m);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

  ojson report;
  report["command"] = "skein";
  report["graph"] = opt.graph_path;
  report["multiweb"] = opt.multiweb_path;
  ojson rows = ojson::object();
  std::vector<std::string> lines = {
      "command: skein",
      "graph: " + opt.graph_path,
      "multiweb: " + opt.multiweb_path,
  };
  for (const auto& [cls, coeff] : r.classes) {
    std::string key =
        "(" + std::to_string(cls.first) + "," + std::to_string(cls.second) + ")";
    rows[key] = coeff;
    lines.push_back(key + ": " + std::to_string(coeff));
  }
  report["classes"] = rows;
  emit(opt, report, lines, ms);
  return kExitOk;
}

int cmd_pants(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  GraphDocument doc = load_doc(opt.graph_path);
  if (doc.graph.surface.kind != SurfaceKind::Pants)
    throw UnsupportedError("pants coefficients need a pants-marked graph");
  auto [z0, z1] = pants_Z1(doc.graph);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

  ojson report;
  report["command"] = "pants";
  report["graph"] = opt.graph_path;
  report["Z0"] = z0;
  report["Z1"] = z1;
  report["check"] = z0 + 6 * z1;
  std::vector<std::string> lines = {
      "command: pants",
      "graph: " + opt.graph_path,
      "Z0: " + std::to_string(z0),
      "Z1: " + std::to_string(z1),
      "check: " + std::to_string(z0 + 6 * z1),
  };
  emit(opt, report, lines, ms);
  return kExitOk;
}

int cmd_sample(const Options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  GraphDocument doc = load_doc(opt.graph_path);
  std::size_t n = opt.n ? opt.n : doc.n;
  if (opt.count < 1) throw InputError("--count must be positive");
  int jobs = std::max(1, opt.jobs);

  // Each draw uses its own derived seed, so the tally is independent of the
  // number of workers.
  std::vector<std::map<Multiweb, long>> partial(static_cast<std::size_t>(jobs));
  std::vector<std::thread> workers;
  std::string worker_error;
  std::mutex error_mu;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (long i = w; i < opt.count; i += jobs) {
          Multiweb m = sample_multiweb(doc.graph, n,
                                       opt.seed + static_cast<std::uint64_t>(i));
          partial[static_cast<std::size_t>(w)][m] += 1;
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        worker_error = e.what();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (!worker_error.empty()) throw InputError(worker_error);
  std::map<Multiweb, long> tally;
  for (const auto& p : partial)
    for (const auto& [m, c] : p) tally[m] += c;
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

  ojson report;
  report["command"] = "sample";
  report["graph"] = opt.graph_path;
  report["n"] = n;
  report["count"] = opt.count;
  report["seed"] = opt.seed;
  ojson rows = ojson::array();
  std::vector<std::string> lines = {
      "command: sample",
      "graph: " + opt.graph_path,
      "n: " + std::to_string(n),
      "count: " + std::to_string(opt.count),
      "seed: " + std::to_string(opt.seed),
  };
  for (const auto& [m, c] : tally) {
    ojson mult = ojson::object();
    std::ostringstream key;
    key << "{";
    bool first = true;
    for (const auto& [eid, k] : m.mult) {
      mult[std::to_string(eid)] = k;
      key << (first ? "" : ",") << eid << ":" << k;
      first = false;
    }
    key << "}";
    double freq = static_cast<double>(c) / static_cast<double>(opt.count);
    rows.push_back({{"multiplicities", mult}, {"count", c}, {"frequency", freq}});
    std::ostringstream line;
    line << key.str() << ": " << c << " (" << freq << ")";
    lines.push_back(line.str());
  }
  report["samples"] = rows;
  emit(opt, report, lines, ms);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact web-trace computations on embedded bipartite graphs"};
  app.require_subcommand(1);
  Options opt;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--jobs", opt.jobs, "worker thread bound")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* verify = app.add_subcommand(
      "verify", "check det of the signed block matrix against the trace sum");
  verify->add_option("--graph", opt.graph_path, "graph document")->required();
  verify->add_option("--n", opt.n, "connection rank override");
  verify->add_option("--connection", opt.connection,
                     "identity | random:SEED | file:PATH");
  add_format(verify);

  CLI::App* annulus =
      app.add_subcommand("annulus", "annulus grid determinants and statistics");
  annulus->add_option("--m", opt.m, "half-circumference (odd)")->required();
  annulus->add_option("--height,--n", opt.height, "grid height")->required();
  annulus->add_option("--what", opt.what,
                      "detz | uv | pgf | means | exponents");
  add_format(annulus);

  CLI::App* skein =
      app.add_subcommand("skein", "reduce a multiweb to loop classes");
  skein->add_option("--graph", opt.graph_path, "graph document")->required();
  skein->add_option("--multiweb", opt.multiweb_path, "multiweb document")
      ->required();
  add_format(skein);

  CLI::App* pants =
      app.add_subcommand("pants", "theta-web coefficients on the pants");
  pants->add_option("--graph", opt.graph_path, "graph document")->required();
  add_format(pants);

  CLI::App* sample = app.add_subcommand("sample", "draw multiwebs exactly");
  sample->add_option("--graph", opt.graph_path, "graph document")->required();
  sample->add_option("--n", opt.n, "multiweb rank override");
  sample->add_option("--count", opt.count, "number of draws");
  sample->add_option("--seed", opt.seed, "base seed");
  add_format(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (app.got_subcommand(verify)) return cmd_verify(opt);
    if (app.got_subcommand(annulus)) return cmd_annulus(opt);
    if (app.got_subcommand(skein)) return cmd_skein(opt);
    if (app.got_subcommand(pants)) return cmd_pants(opt);
    if (app.got_subcommand(sample)) return cmd_sample(opt);
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
