// Command-line front end: JSON graphs in, JSON results out.
//
// Subcommands
//   decide --k K      exact decision "every face <= K" (K in 2..4) + witness
//   minimize          smallest largest face: --exact (default) or --approx
//   uniform [--k K]   recognize a k-uniform embedding (k forced by Euler)
//   enumerate         exhaustive embedding search under --limit
//   spqr              print the SPQR decomposition
//   gen ...           instance generators (graph JSON on stdout)
//
// Exit codes: 0 yes/success, 1 negative decision, 2 invalid input,
// 3 size guard exceeded. stdout carries JSON only; diagnostics go to stderr.
// Identical argv (and --seed) always produce byte-identical stdout.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "faceopt/faceopt.hpp"

namespace {

using faceopt::Error;
using faceopt::ErrorCode;
using faceopt::Json;
using faceopt::Multigraph;

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::TooLarge:
    case ErrorCode::SizeGuardExceeded:
      return 3;
    default:
      return 2;
  }
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    faceopt::fail(ErrorCode::InvalidInput, origin + ": " + e.what());
  }
}

Json read_json_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return parse_json_text(buf.str(), "stdin");
  }
  std::ifstream in(path);
  if (!in) faceopt::fail(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

struct Outcome {
  Json out;
  int code = 0;
};

Outcome run_decide(const Multigraph& g, int k) {
  faceopt::Decision d = faceopt::decide_min_max_face(g, k);
  Json j;
  if (d.yes) j = faceopt::embedding_to_json(g, d.rotation, d.report);
  else j["schema"] = faceopt::kSchemaTag;
  j["k"] = k;
  j["yes"] = d.yes;
  return {std::move(j), d.yes ? 0 : 1};
}

Outcome run_minimize(const Multigraph& g, bool approx,
                     unsigned long long limit) {
  Json j;
  if (approx) {
    faceopt::ApproxResult ar = faceopt::approx_min_max_face(g);
    j = faceopt::embedding_to_json(g, ar.rotation, ar.report);
    j["mode"] = "approx";
    j["value"] = ar.value;
    return {std::move(j), 0};
  }
  // Values up to 4 come from the polynomial decision procedures; beyond
  // that, exhaustive enumeration under the size guard.
  for (int k = 2; k <= 4; ++k) {
    faceopt::Decision d = faceopt::decide_min_max_face(g, k);
    if (!d.yes) continue;
    j = faceopt::embedding_to_json(g, d.rotation, d.report);
    j["mode"] = "exact";
    j["value"] = k;
    return {std::move(j), 0};
  }
  faceopt::ExactMinMax ex = faceopt::exact_min_max_face(g, limit);
  j = faceopt::embedding_to_json(g, ex.rotation, ex.report);
  j["mode"] = "exact";
  j["value"] = ex.value;
  return {std::move(j), 0};
}

Outcome run_uniform(const Multigraph& g, std::optional<int> want,
                    unsigned long long limit) {
  std::optional<faceopt::UniformResult> res = faceopt::recognize_uniform(g, limit);
  bool yes = res.has_value() && (!want || res->k == *want);
  if (!yes) {
    Json j;
    j["schema"] = faceopt::kSchemaTag;
    j["uniform"] = false;
    if (want) j["k"] = *want;
    return {std::move(j), 1};
  }
  faceopt::FaceReport rep = faceopt::planar_faces(g, res->rotation);
  Json j = faceopt::embedding_to_json(g, res->rotation, rep);
  j["uniform"] = true;
  j["k"] = res->k;
  return {std::move(j), 0};
}

Outcome run_enumerate(const Multigraph& g, unsigned long long limit) {
  faceopt::ExactMinMax ex = faceopt::exact_min_max_face(g, limit);
  Json j;
  j["schema"] = faceopt::kSchemaTag;
  j["embeddings"] = ex.embeddings;
  j["min_max_face"] = ex.value;
  j["best"] = faceopt::embedding_to_json(g, ex.rotation, ex.report);
  return {std::move(j), 0};
}

Outcome run_spqr(const Multigraph& g) {
  faceopt::SpqrTree t = faceopt::build_spqr(g);
  Json nodes = Json::array();
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    const faceopt::SpqrNode& nd = t.nodes[i];
    Json edges = Json::array();
    for (const faceopt::SkelEdge& se : nd.edges) {
      Json je;
      switch (se.kind) {
        case faceopt::SkelEdge::Kind::Real:
          je["kind"] = "real";
          if (se.real_edge >= 0) je["edge"] = g.edge_names[se.real_edge];
          break;
        case faceopt::SkelEdge::Kind::Virtual:
          je["kind"] = "virtual";
          je["child"] = se.child;
          break;
        case faceopt::SkelEdge::Kind::ParentVirtual:
          je["kind"] = "parent";
          break;
      }
      Json ends = Json::array();
      ends.push_back(g.vertex_names[se.u]);
      ends.push_back(g.vertex_names[se.v]);
      je["ends"] = std::move(ends);
      edges.push_back(std::move(je));
    }
    Json jn;
    jn["id"] = static_cast<int>(i);
    jn["type"] = faceopt::node_type_name(nd.type);
    jn["parent"] = nd.parent;
    if (nd.pole_u >= 0 && nd.pole_v >= 0) {
      Json poles = Json::array();
      poles.push_back(g.vertex_names[nd.pole_u]);
      poles.push_back(g.vertex_names[nd.pole_v]);
      jn["poles"] = std::move(poles);
    }
    jn["edges"] = std::move(edges);
    nodes.push_back(std::move(jn));
  }
  Json j;
  j["schema"] = faceopt::kSchemaTag;
  j["root"] = t.root;
  j["nodes"] = std::move(nodes);
  return {std::move(j), 0};
}

std::vector<int> parse_clause(const std::string& text) {
  std::vector<int> lits;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      int lit = std::stoi(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      lits.push_back(lit);
    } catch (const std::exception&) {
      faceopt::fail(ErrorCode::InvalidInput,
                    "clause literals must be comma-separated integers, got '" + text + "'");
    }
  }
  if (lits.empty())
    faceopt::fail(ErrorCode::InvalidInput, "empty clause '" + text + "'");
  return lits;
}

// Directory batch mode: one NDJSON line per *.json file (sorted by name),
// each line the subcommand's result plus "file"; overall exit is the worst
// per-file code. --jobs parallelizes only this mode; output order is fixed.
int run_batch(const std::string& dir, int jobs,
              const std::function<Outcome(const Multigraph&)>& handler,
              std::ostream& out) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  try {
    for (const auto& de : fs::directory_iterator(dir))
      if (de.path().extension() == ".json") files.push_back(de.path());
  } catch (const fs::filesystem_error& e) {
    faceopt::fail(ErrorCode::InvalidInput, e.what());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> lines(files.size());
  std::vector<int> codes(files.size(), 0);
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (size_t i; (i = cursor.fetch_add(1)) < files.size();) {
      Json line;
      try {
        Multigraph g = faceopt::graph_from_json(read_json_input(files[i].string()));
        Outcome o = handler(g);
        line = std::move(o.out);
        codes[i] = o.code;
      } catch (const Error& err) {
        line["schema"] = faceopt::kSchemaTag;
        line["error"] = {{"code", faceopt::error_name(err.code())},
                         {"message", err.what()}};
        codes[i] = exit_for(err.code());
      }
      line["file"] = files[i].filename().string();
      lines[i] = line.dump();
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::string& l : lines) out << l << "\n";
  return files.empty() ? 0 : *std::max_element(codes.begin(), codes.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"faceopt: embeddings of biconnected planar multigraphs that "
               "minimize the largest face"};
  app.require_subcommand(1);

  struct {
    std::string input = "-";
    std::string output;
    int k = 3;
    int uniform_k = 0;
    bool exact = false;
    bool approx = false;
    unsigned long long limit = 1000000;
    int jobs = 1;
    int gen_d = 2;
    int gen_k = 3;
    int gen_n = 8;
    int gen_m = 12;
    unsigned long long seed = 0;
    int cnf_vars = 0;
    std::vector<std::string> clauses;
  } cfg;

  const std::string input_help =
      "graph JSON file, directory of *.json (batch mode), or '-' for stdin";
  auto add_io = [&](CLI::App* sub, bool batch) {
    sub->add_option("input", cfg.input, input_help);
    sub->add_option("-o,--output", cfg.output, "write results to a file instead of stdout");
    if (batch)
      sub->add_option("--jobs", cfg.jobs, "parallel workers in directory batch mode")
          ->check(CLI::PositiveNumber);
  };

  CLI::App* decide = app.add_subcommand(
      "decide", "decide whether some embedding has every face of size at most k");
  decide->add_option("-k,--k", cfg.k, "face size bound (2..4)")->required();
  add_io(decide, true);

  CLI::App* minimize =
      app.add_subcommand("minimize", "minimize the largest face over all embeddings");
  CLI::Option* fe = minimize->add_flag("--exact", cfg.exact, "exact optimum (default)");
  CLI::Option* fa = minimize->add_flag("--approx", cfg.approx, "6-approximation");
  fe->excludes(fa);
  fa->excludes(fe);
  minimize->add_option("--limit", cfg.limit, "embedding guard for the exact fallback")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_io(minimize, true);

  CLI::App* uniform = app.add_subcommand(
      "uniform", "recognize an embedding with all faces the same size");
  uniform->add_option("-k,--k", cfg.uniform_k, "require this face size");
  uniform->add_option("--limit", cfg.limit, "embedding guard for face sizes outside {2,3,4,6}")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_io(uniform, true);

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "exhaustively enumerate embeddings (up to reflection)");
  enumerate->add_option("--limit", cfg.limit, "maximum number of embeddings")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_io(enumerate, true);

  CLI::App* spqr = app.add_subcommand("spqr", "print the SPQR decomposition");
  add_io(spqr, false);

  CLI::App* gen = app.add_subcommand("gen", "generate instance graphs");
  gen->require_subcommand(1);
  CLI::App* gen_parallel = gen->add_subcommand(
      "parallel", "pole-to-pole paths of lengths 1 and d (a (1,d)-edge), d in {2,3}");
  gen_parallel->add_option("-d,--d", cfg.gen_d, "long path length")->required();
  CLI::App* gen_wheel = gen->add_subcommand(
      "wheel", "subdivided wheel whose inner faces all have odd size k");
  gen_wheel->add_option("-d,--d", cfg.gen_d, "outer cycle length (3..5)")->required();
  gen_wheel->add_option("-k,--k", cfg.gen_k, "inner face size (odd, >= 3)")->required();
  CLI::App* gen_minmax5 = gen->add_subcommand(
      "minmax5", "SAT reduction: min-max face <= 5 iff the formula is satisfiable");
  gen_minmax5
      ->add_option("--clause", cfg.clauses,
                   "comma-separated literals, repeatable (e.g. --clause 1,-2)")
      ->required();
  gen_minmax5->add_option("--vars", cfg.cnf_vars,
                          "variable count (default: largest literal)");
  CLI::App* gen_random = gen->add_subcommand(
      "random", "seeded random biconnected planar multigraph");
  gen_random->add_option("-n,--n", cfg.gen_n, "target vertex count")->capture_default_str();
  gen_random->add_option("-m,--m", cfg.gen_m, "exact edge count")->capture_default_str();
  gen_random->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  for (CLI::App* sub : {gen_parallel, gen_wheel, gen_minmax5, gen_random})
    sub->add_option("-o,--output", cfg.output, "write results to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::ofstream out_file;
    if (!cfg.output.empty()) {
      out_file.open(cfg.output);
      if (!out_file)
        faceopt::fail(ErrorCode::InvalidInput, "cannot open '" + cfg.output + "' for writing");
    }
    std::ostream& out = cfg.output.empty() ? std::cout : out_file;

    if (gen->parsed()) {
      Multigraph g;
      if (gen_parallel->parsed()) {
        g = faceopt::gen_parallel_edge(cfg.gen_d).graph;
      } else if (gen_wheel->parsed()) {
        g = faceopt::gen_wheel_edge(cfg.gen_d, cfg.gen_k).graph;
      } else if (gen_minmax5->parsed()) {
        faceopt::CnfFormula phi;
        for (const std::string& text : cfg.clauses) {
          phi.clauses.push_back(parse_clause(text));
          for (int lit : phi.clauses.back())
            phi.num_vars = std::max(phi.num_vars, std::abs(lit));
        }
        if (cfg.cnf_vars > 0) phi.num_vars = cfg.cnf_vars;
        g = faceopt::gen_minmax5_instance(phi).graph;
      } else {
        g = faceopt::gen_random_biconnected(cfg.gen_n, cfg.gen_m, cfg.seed);
      }
      out << faceopt::graph_to_json(g).dump() << "\n";
      return 0;
    }

    std::function<Outcome(const Multigraph&)> handler;
    if (decide->parsed()) {
      handler = [&](const Multigraph& g) { return run_decide(g, cfg.k); };
    } else if (minimize->parsed()) {
      handler = [&](const Multigraph& g) {
        return run_minimize(g, cfg.approx, cfg.limit);
      };
    } else if (uniform->parsed()) {
      handler = [&](const Multigraph& g) {
        std::optional<int> want;
        if (uniform->count("-k")) want = cfg.uniform_k;
        return run_uniform(g, want, cfg.limit);
      };
    } else if (enumerate->parsed()) {
      handler = [&](const Multigraph& g) { return run_enumerate(g, cfg.limit); };
    } else {
      handler = [&](const Multigraph& g) { return run_spqr(g); };
    }

    if (cfg.input != "-" && std::filesystem::is_directory(cfg.input)) {
      if (spqr->parsed())
        faceopt::fail(ErrorCode::InvalidInput, "spqr does not support batch mode");
      return run_batch(cfg.input, cfg.jobs, handler, out);
    }
    Multigraph g = faceopt::graph_from_json(read_json_input(cfg.input));
    Outcome o = handler(g);
    out << o.out.dump() << "\n";
    return o.code;
  } catch (const Error& err) {
    std::cerr << "faceopt: " << err.what() << "\n";
    return exit_for(err.code());
  } catch (const std::exception& err) {
    std::cerr << "faceopt: " << err.what() << "\n";
    return 2;
  }
}
