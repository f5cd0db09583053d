// gbundle: build graph bundles and run the verification pipelines.
//
// Exit codes: 0 success, 1 expectation mismatch, 2 input error, 3 resource cap.

#include <algorithm>
#include <chrono>
#include <exception>
#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gbundle/bundle.hpp"
#include "gbundle/error.hpp"
#include "gbundle/examples.hpp"
#include "gbundle/io.hpp"
#include "gbundle/report.hpp"
#include "gbundle/ricci.hpp"
#include "gbundle/symmetry.hpp"
#include "gbundle/walks.hpp"

#ifndef GBUNDLE_VERSION
#define GBUNDLE_VERSION "dev"
#endif

namespace fs = std::filesystem;
using namespace gbundle;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

const std::vector<std::string> kCheckNames = {
    "trivial", "dvb",      "transitive", "orbits", "ricci",
    "s-ricci", "theorem2", "theorem4",   "4loop"};

struct Options {
  std::string out;
  unsigned long long seed = 0;
  int jobs = 1;
  bool timing = false;
};

struct Expectation {
  std::string property;
  Json expected;
  Json observed;
};

// Shared by every subcommand: collects results and writes the report.
class Report {
 public:
  Report(std::string command, std::vector<std::string> argv)
      : command_(std::move(command)), argv_(std::move(argv)) {}

  void input(const std::string& name, const std::string& bytes) {
    inputs_[name] = digest(bytes);
  }
  Json& results() { return results_; }
  void expect(std::string property, Json expected, Json observed) {
    expectations_.push_back(
        {std::move(property), std::move(expected), std::move(observed)});
  }
  bool all_met() const {
    return std::all_of(expectations_.begin(), expectations_.end(),
                       [](const Expectation& e) { return e.expected == e.observed; });
  }

  Json to_json(const Options& opt, double seconds) const {
    Json j{{"schema", kReportSchema},
           {"version", GBUNDLE_VERSION},
           {"command", {{"name", command_}, {"argv", argv_}, {"seed", opt.seed}}}};
    Json in = Json::object();
    for (const auto& [k, v] : inputs_) in[k] = v;
    j["inputs"] = std::move(in);
    j["results"] = results_;
    if (!expectations_.empty()) {
      Json ex = Json::array();
      for (const auto& e : expectations_)
        ex.push_back({{"property", e.property},
                      {"expected", e.expected},
                      {"observed", e.observed},
                      {"ok", e.expected == e.observed}});
      j["expectations"] = std::move(ex);
      j["expectations_met"] = all_met();
    }
    if (opt.timing) j["duration_ms"] = static_cast<long long>(seconds * 1000.0);
    return j;
  }

 private:
  std::string command_;
  std::vector<std::string> argv_;
  std::map<std::string, std::string> inputs_;
  Json results_ = Json::object();
  std::vector<Expectation> expectations_;
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text(out, text);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

Json hypothesis_json(const HypothesisError& e) {
  return {{"hypothesis_failed", e.hypothesis()},
          {"message", e.what()},
          {"witness", e.witness()}};
}

// ---- example ----------------------------------------------------------------

Json card_for(const ExampleSpec& spec, const Bundle& b) {
  Json card{{"schema", kReportSchema}, {"example", to_json(spec)}};
  if (auto expected = expected_properties(spec)) card["expected"] = to_json(*expected);
  auto degree = b.total().regular_degree();
  card["bundle"] = {{"vertices", b.total().vertex_count()},
                    {"edges", b.total().edge_count()},
                    {"regular_degree", degree ? Json(*degree) : Json(nullptr)}};
  return card;
}

Json run_example(const ExampleSpec& spec, const fs::path& dir) {
  const Connection c = make_example(spec);
  const Bundle b(c);
  const std::string slug = spec.slug();
  fs::create_directories(dir);
  const std::string base = slug + ".base.graph";
  const std::string fiber = slug + ".fiber.graph";
  const std::string conn = slug + ".conn";
  const std::string total = slug + ".bundle.graph";
  const std::string card = slug + ".card.json";
  write_text(dir / base, format_graph(c.base()));
  write_text(dir / fiber, format_graph(c.fiber()));
  write_text(dir / conn, format_connection(c, base, fiber));
  write_text(dir / total, format_graph(b.total()));
  const Json card_json = card_for(spec, b);
  write_text(dir / card, card_json.dump(2) + "\n");
  return {{"example", to_json(spec)},
          {"files",
           {{"base", base}, {"fiber", fiber}, {"connection", conn},
            {"bundle", total}, {"card", card}}},
          {"card", card_json}};
}

// ---- check ------------------------------------------------------------------

struct CheckOutcome {
  Json result;
  std::vector<Expectation> expectations;
};

CheckOutcome run_check(const std::string& name, const Bundle& b,
                       const ExpectedProperties& exp) {
  const Connection& c = b.connection();
  CheckOutcome out;
  auto expect = [&](const char* property, auto expected, Json observed) {
    if (expected) out.expectations.push_back({property, *expected, std::move(observed)});
  };
  if (name == "trivial") {
    TrivialityResult t = is_trivial(c);
    out.result = to_json(t);
    expect("trivial", exp.trivial, t.trivial);
  } else if (name == "dvb") {
    auto nulls = null_elements(c);
    out.result = {{"dvb", !nulls.empty()}, {"null_elements", nulls}};
    expect("dvb", exp.dvb, !nulls.empty());
  } else if (name == "transitive") {
    const bool t = is_vertex_transitive(b.total());
    out.result = {{"vertex_transitive", t}};
    expect("transitive", exp.transitive, t);
  } else if (name == "orbits") {
    AutomorphismGroup aut = automorphism_group(b.total());
    out.result = to_json(aut);
    expect("orbits", exp.orbits, aut.orbits.count);
  } else if (name == "ricci") {
    out.result = to_json(certify(b.total(), false));
  } else if (name == "s-ricci") {
    FrameCertificate cert = certify(b.total(), true);
    out.result = to_json(cert);
    expect("s_ricci_flat", exp.s_ricci_flat, cert.s_ricci_flat);
  } else if (name == "theorem2") {
    try {
      SeparationReport r = separation_report(b);
      out.result = to_json(r);
      if (exp.transitive && r.null_count)
        out.expectations.push_back({"null_count_differs", !*exp.transitive,
                                    r.null_count_differs});
    } catch (const HypothesisError& e) {
      out.result = hypothesis_json(e);
      expect("trivial", exp.trivial, true);
    }
  } else if (name == "theorem4") {
    try {
      LocallyAbelianReport r = locally_abelian_certificate(b);
      out.result = to_json(r);
      expect("s_ricci_flat", exp.s_ricci_flat, r.s_ricci_flat);
      expect("transitive", exp.transitive, r.vertex_transitive);
    } catch (const HypothesisError& e) {
      // A failed hypothesis says nothing about flatness itself.
      out.result = hypothesis_json(e);
    }
  } else if (name == "4loop") {
    FourLoopCheck f = check_4loop_balanced(c);
    out.result = to_json(f);
    expect("four_loops_balanced", exp.four_loops_balanced, f.balanced);
  }
  return out;
}

// Checks run on immutable inputs; results are collected in request order so
// the report does not depend on scheduling.
std::vector<CheckOutcome> run_checks(const std::vector<std::string>& names,
                                     const Bundle& b,
                                     const ExpectedProperties& exp, int jobs) {
  std::vector<CheckOutcome> outcomes(names.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < names.size(); ++i)
      outcomes[i] = run_check(names[i], b, exp);
    return outcomes;
  }
  for (std::size_t lo = 0; lo < names.size(); lo += jobs) {
    const std::size_t hi = std::min(names.size(), lo + jobs);
    std::vector<std::future<CheckOutcome>> batch;
    for (std::size_t i = lo; i < hi; ++i)
      batch.push_back(std::async(std::launch::async, run_check,
                                 std::cref(names[i]), std::cref(b), std::cref(exp)));
    // get() rethrows; the earliest failing check wins.
    for (std::size_t i = lo; i < hi; ++i) outcomes[i] = batch[i - lo].get();
  }
  return outcomes;
}

}  // namespace

int main(int argc, char** argv) {
  const auto started = std::chrono::steady_clock::now();
  std::vector<std::string> args(argv + 1, argv + argc);

  CLI::App app{"Graph bundles: construction, triviality, symmetry and frame checks"};
  app.set_version_flag("--version", GBUNDLE_VERSION);
  app.require_subcommand(1);
  Options opt;
  app.add_option("--out", opt.out, "Write the report to this file instead of stdout");
  app.add_option("--seed", opt.seed, "Seed recorded in the report")->capture_default_str();
  app.add_option("--jobs", opt.jobs, "Checks run concurrently")
      ->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--timing", opt.timing, "Include wall-clock duration in the report");

  ExampleSpec spec;
  std::string example_dir = ".";
  std::map<std::string, int> example_params;
  auto* example = app.add_subcommand("example", "Write an example's files and property card");
  example->add_option("name", spec.name, "dvb1, eg2, eg3, dvb2-torus or product")->required();
  for (const char* key : {"n", "m", "i", "N"})
    example->add_option(std::string("--") + key, example_params[key]);
  example->add_option("--dir", example_dir, "Output directory")->capture_default_str();

  std::string conn_file, card_file, checks_arg;
  auto* check = app.add_subcommand("check", "Run verification pipelines on a connection");
  check->add_option("connection", conn_file)->required()->check(CLI::ExistingFile);
  check->add_option("--checks", checks_arg, "Comma separated: " +
      [] { std::string s; for (auto& n : kCheckNames) s += (s.empty() ? "" : ",") + n; return s; }())
      ->required();
  check->add_option("--card", card_file, "Property card (default: <stem>.card.json beside the connection)");

  std::string graph_file;
  int vertex = 0, length = 0, max_length = 16;
  auto* count = app.add_subcommand("count", "Exact closed-walk count at a vertex");
  count->add_option("graph", graph_file)->required()->check(CLI::ExistingFile);
  count->add_option("--vertex", vertex)->required();
  count->add_option("--length", length)->required();
  count->add_option("--max-length", max_length)->capture_default_str();

  std::string walk_arg;
  auto* project = app.add_subcommand("project", "Base and fiber projections of a bundle walk");
  project->add_option("connection", conn_file)->required()->check(CLI::ExistingFile);
  project->add_option("--walk", walk_arg, "Comma separated flat vertex ids")->required();

  std::string dot_name = "G";
  auto* dot = app.add_subcommand("export-dot", "Render a graph file as DOT");
  dot->add_option("graph", graph_file)->required()->check(CLI::ExistingFile);
  dot->add_option("--name", dot_name)->capture_default_str();

  int max_total = 8;
  auto* lemmas = app.add_subcommand("verify-lemmas", "Projection-count sweep against the closed form");
  lemmas->add_option("--max-total", max_total, "Largest |base| + |fiber|")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*dot) {
      const std::string text = read_text(graph_file);
      emit(to_dot(parse_graph(text), dot_name), opt.out);
      return 0;
    }

    int exit_code = 0;
    Report report(app.get_subcommands().front()->get_name(), args);
    if (*example) {
      for (const auto& [k, v] : example_params)
        if (example->count("--" + k)) spec.params[k] = v;
      report.results() = run_example(spec, example_dir);
    } else if (*check) {
      std::vector<std::string> names = split(checks_arg, ',');
      for (auto& n : names) {
        if (n == "4-loop") n = "4loop";
        if (n == "separation") n = "theorem2";
        if (n == "locally-abelian") n = "theorem4";
        if (std::find(kCheckNames.begin(), kCheckNames.end(), n) == kCheckNames.end())
          throw Error(ErrorKind::kInvalidParameter, "unknown check '" + n + "'");
      }
      const std::string conn_text = read_text(conn_file);
      report.input("connection", conn_text);
      const Connection c = load_connection(conn_file);
      report.input("base", format_graph(c.base()));
      report.input("fiber", format_graph(c.fiber()));
      fs::path card_path = card_file;
      if (card_path.empty()) {
        fs::path guess = fs::path(conn_file);
        guess.replace_extension(".card.json");
        if (fs::exists(guess)) card_path = guess;
      }
      ExpectedProperties exp;
      if (!card_path.empty()) {
        const std::string card_text = read_text(card_path);
        report.input("card", card_text);
        Json card;
        try {
          card = Json::parse(card_text);
        } catch (const Json::parse_error& e) {
          throw Error(ErrorKind::kParse, card_path.string() + ": " + e.what());
        }
        exp = expected_from_json(card);
      }
      const Bundle b(c);
      auto outcomes = run_checks(names, b, exp, opt.jobs);
      Json results = Json::object();
      for (std::size_t i = 0; i < names.size(); ++i) {
        results[names[i]] = std::move(outcomes[i].result);
        for (auto& e : outcomes[i].expectations)
          report.expect(names[i] + "." + e.property, e.expected, e.observed);
      }
      report.results() = std::move(results);
      if (!report.all_met()) exit_code = kExitMismatch;
    } else if (*count) {
      if (length > max_length) {
        throw ResourceError("max_length", "walk length " + std::to_string(length) +
                                              " exceeds the cap of " +
                                              std::to_string(max_length));
      }
      const std::string text = read_text(graph_file);
      report.input("graph", text);
      const Graph g = parse_graph(text);
      report.results() = {{"vertex", vertex},
                          {"label", vertex >= 0 && vertex < g.vertex_count() ? g.label(vertex) : ""},
                          {"length", length},
                          {"count", to_json(closed_walk_count(g, vertex, length))}};
    } else if (*project) {
      const std::string conn_text = read_text(conn_file);
      report.input("connection", conn_text);
      const Bundle b(load_connection(conn_file));
      Path walk;
      for (const auto& tok : split(walk_arg, ',')) {
        try {
          walk.vertices.push_back(std::stoi(tok));
        } catch (const std::exception&) {
          throw Error(ErrorKind::kParse, "walk entries must be integers: '" + tok + "'");
        }
      }
      report.results() = {{"walk", to_json(walk)},
                          {"projection", to_json(project_bundle(b, walk))}};
    } else if (*lemmas) {
      struct Case {
        std::string name;
        Connection c;
      };
      std::vector<Case> cases;
      for (int n : {5, 6}) {
        const std::string base = "cycle" + std::to_string(n);
        cases.push_back({base + " x complete3 identity",
                         identity_connection(cycle_graph(n), complete_graph(3))});
        cases.push_back({base + " x complete3 eg2", make_eg2(n, 3)});
        cases.push_back({base + " x cycle4 identity",
                         identity_connection(cycle_graph(n), cycle_graph(4))});
        cases.push_back({base + " x cycle4 dvb1", make_dvb1(n)});
      }
      Json rows = Json::array();
      std::size_t mismatches = 0;
      for (const auto& cs : cases) {
        ProjectionSweep s = verify_projection_counts(Bundle(cs.c), max_total);
        mismatches += s.mismatches;
        rows.push_back({{"case", cs.name},
                        {"walks", s.walks},
                        {"cases", s.cases},
                        {"mismatches", s.mismatches},
                        {"failures", s.failures}});
      }
      report.results() = {{"max_total", max_total}, {"sweeps", rows},
                          {"all_agree", mismatches == 0}};
      report.expect("verify-lemmas.all_agree", true, mismatches == 0);
      if (mismatches) exit_code = kExitMismatch;
    }

    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - started)
                               .count();
    emit(report.to_json(opt, seconds).dump(2) + "\n", opt.out);
    return exit_code;
  } catch (const ResourceError& e) {
    std::cerr << "error: resource cap '" << e.cap() << "' exceeded: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitInput;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
