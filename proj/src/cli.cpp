#include "sparsecut/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sparsecut/error.hpp"
#include "sparsecut/graph.hpp"
#include "sparsecut/ls_curve.hpp"
#include "sparsecut/parallel.hpp"
#include "sparsecut/partitioner.hpp"
#include "sparsecut/random_walk.hpp"
#include "sparsecut/spectral.hpp"
#include "sparsecut/testbed.hpp"

namespace sparsecut::cli {

namespace {

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

class Record {
 public:
  explicit Record(std::ostream& out) : out_(out) {}
  template <typename T>
  Record& operator()(const char* key, const T& value) {
    out_ << key << '\t' << value << '\n';
    return *this;
  }
  Record& operator()(const char* key, double value) {
    out_ << key << '\t' << real(value) << '\n';
    return *this;
  }

 private:
  std::ostream& out_;
};

void write_members(const std::string& path, const Graph& g, const std::vector<Vertex>& members) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write '" + path + "'");
  for (Vertex v : members) f << g.label(v) << '\n';
}

Vertex vertex_for(const Graph& g, Label label) {
  auto v = g.find_label(label);
  if (!v) throw DomainError("vertex " + std::to_string(label) + " does not occur in the graph");
  return *v;
}

std::vector<Vertex> read_set(const std::string& path, const Graph& g) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open '" + path + "'");
  std::vector<Vertex> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    std::istringstream in(line);
    std::string token;
    if (!(in >> token) || token.front() == '#') continue;
    Label label = 0;
    try {
      std::size_t used = 0;
      label = std::stoull(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError(line_no, "expected a vertex id, got '" + token + "'");
    }
    out.push_back(vertex_for(g, label));
  }
  return out;
}

void print_cut(Record& rec, const Graph& g, const std::optional<SweepOutcome>& o) {
  if (!o) {
    for (const char* key : {"size", "volume", "boundary", "conductance", "conductance_exact",
                            "origin_seed", "origin_step", "origin_prefix"})
      rec(key, "none");
    return;
  }
  rec("size", o->best.members.size())("volume", o->best.volume)("boundary", o->best.boundary);
  rec("conductance", o->best.conductance_value())("conductance_exact", to_string(o->best.conductance()));
  rec("origin_seed", g.label(o->origin.seed))("origin_step", o->origin.step)("origin_prefix", o->origin.prefix);
}

int workers_from_environment() {
  const char* text = std::getenv("SPARSECUT_WORKERS");
  if (!text || !*text) return 0;
  int value = -1;
  const char* end = text + std::strlen(text);
  const auto [ptr, ec] = std::from_chars(text, end, value);
  if (ec != std::errc() || ptr != end || value < 0)
    throw DomainError("SPARSECUT_WORKERS must be a non-negative integer, got '" + std::string(text) + "'");
  return value;
}

struct Options;
Graph load_graph(const Options& o);

struct Options {
  std::string graph;
  std::string members_out;
  std::string out_path;
  std::string set_path;
  std::string family;
  Volume k = 0;
  double epsilon = 0.0;
  double phi = 0.0;
  double truncation = 0.0;
  double edge_p = 0.0;
  std::int64_t horizon = -1;
  std::int64_t steps = 0;
  std::int64_t certify_steps = 100;
  Label seed = 0;
  int r = 0, s = 0;
  Vertex n = 0;
  Vertex max_vertices = kMaxEnumerationVertices;
  std::uint64_t rng_seed = 1;
  int workers = 0;
  int verbosity = 0;
  std::ostream* log = nullptr;
};

Graph load_graph(const Options& o) {
  Graph g = load_edge_list_file(o.graph);
  if (o.verbosity > 0 && o.log)
    *o.log << "sparsecut: loaded " << o.graph << " (n=" << g.vertex_count() << ", m=" << g.edge_count()
           << ", duplicates=" << g.metadata().duplicate_edges << ")\n";
  return g;
}

int run_load(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o);
  Volume min_d = g.vertex_count() ? g.degree(0) : 0, max_d = min_d;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    min_d = std::min(min_d, g.degree(v));
    max_d = std::max(max_d, g.degree(v));
  }
  Record{out}("vertices", g.vertex_count())("edges", g.edge_count())("total_volume", g.total_volume())(
      "duplicate_edges", g.metadata().duplicate_edges)("connected", g.metadata().connected ? "yes" : "no")(
      "min_degree", min_d)("max_degree", max_d);
  return kExitOk;
}

int run_generate(const Options& o, std::ostream& out) {
  std::optional<PlantedInstance> inst;
  Graph g;
  if (o.family == "ring-of-cliques") {
    inst = ring_of_cliques(o.r, o.s);
  } else if (o.family == "barbell") {
    inst = barbell(o.s);
  } else if (o.family == "path") {
    g = path(o.n);
  } else if (o.family == "complete") {
    g = complete(o.n);
  } else {
    g = erdos_renyi(o.n, o.edge_p, o.rng_seed);
  }
  if (inst) g = inst->graph;

  {
    std::ofstream f(o.out_path);
    if (!f) throw DomainError("cannot write '" + o.out_path + "'");
    f << "# " << o.family << " n=" << g.vertex_count() << " m=" << g.edge_count() << '\n';
    write_edge_list(f, g);
  }

  const std::string meta_path = o.out_path + ".meta";
  std::ofstream meta(meta_path);
  if (!meta) throw DomainError("cannot write '" + meta_path + "'");
  Record m(meta);
  m("family", o.family)("vertices", g.vertex_count())("edges", g.edge_count())(
      "connected", g.metadata().connected ? "yes" : "no")("isolated_dropped", g.metadata().isolated_dropped);
  if (inst) {
    std::string members;
    for (Vertex v : inst->planted.members) members += (members.empty() ? "" : " ") + std::to_string(v);
    m("planted_members", members)("planted_volume", inst->planted.volume)(
        "planted_boundary", inst->planted.boundary)("phi_planted", to_string(inst->phi_planted));
  } else {
    m("planted_members", "none")("planted_volume", "none")("planted_boundary", "none")("phi_planted", "none");
  }

  Record{out}("graph", o.out_path)("metadata", meta_path)("vertices", g.vertex_count())("edges", g.edge_count());
  return kExitOk;
}

std::optional<std::int64_t> horizon_of(const Options& o) {
  if (o.horizon < 0) return std::nullopt;
  return o.horizon;
}

int run_global(const Options& o, bool tight, std::ostream& out) {
  const Graph g = load_graph(o);
  GlobalParams params{o.k, tight ? tight_volume_exponent(o.k, o.epsilon) : o.epsilon, horizon_of(o)};
  const auto result = tight ? global_sparsest_cut_tight_volume(g, o.k, o.epsilon, horizon_of(o))
                            : global_sparsest_cut(g, params);
  Record rec(out);
  rec("status", result ? "found" : "empty")("command", tight ? "global-tight" : "global");
  rec("vertices", g.vertex_count())("edges", g.edge_count())("k", o.k)("epsilon", o.epsilon);
  rec("exponent", params.effective_epsilon())("horizon", params.horizon())("volume_cap", params.volume_cap());
  print_cut(rec, g, result);
  rec("work", result ? result->work : 0);
  if (result && !o.members_out.empty()) write_members(o.members_out, g, result->best.members);
  return kExitOk;
}

int run_local(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o);
  LocalParams params{vertex_for(g, o.seed), o.k, o.phi, o.epsilon};
  const LocalResult result = local_partition(g, params);
  Record rec(out);
  rec("status", result.status == LocalStatus::found ? "found" : "not-found")("command", "local");
  rec("vertices", g.vertex_count())("edges", g.edge_count())("seed", o.seed)("k", o.k)("phi", o.phi)(
      "epsilon", o.epsilon);
  rec("horizon", params.horizon())("truncation", params.truncation())("volume_cap", params.volume_cap())(
      "threshold", params.acceptance_threshold());
  print_cut(rec, g, result.outcome);
  rec("work", result.work);
  if (result.status == LocalStatus::found && !o.members_out.empty())
    write_members(o.members_out, g, result.outcome->best.members);
  return kExitOk;
}

int run_curve(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o);
  const WalkTrace trace = run_walk(g, vertex_for(g, o.seed), {o.steps, o.truncation});
  const Distribution& last = trace.steps.back();
  const LSCurve c = build_curve(g, last);
  out << "x\ty\n";
  for (std::size_t j = 0; j < c.x.size(); ++j) out << c.x[j] << '\t' << real(c.y[j]) << '\n';

  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path);
    if (!f) throw DomainError("cannot write '" + o.out_path + "'");
    f << "vertex\tmass\n";
    if (const auto* dense = std::get_if<DenseDistribution>(&last)) {
      for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (dense->mass[v] != 0.0) f << g.label(v) << '\t' << real(dense->mass[v]) << '\n';
    } else {
      const auto& sparse = std::get<SparseDistribution>(last);
      for (std::size_t i = 0; i < sparse.size(); ++i)
        f << g.label(sparse.support[i]) << '\t' << real(sparse.mass[i]) << '\n';
    }
  }
  return kExitOk;
}

int run_certify(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o);
  const std::vector<Vertex> set = read_set(o.set_path, g);
  const CertificateReport report = certify_lower_bound(g, set, o.certify_steps);
  Record rec(out);
  rec("size", report.cut.members.size())("volume", report.cut.volume)("boundary", report.cut.boundary);
  rec("lambda", report.pair.lambda)("phi", report.cut.conductance_value())(
      "phi_exact", to_string(report.cut.conductance()))("iterations", report.pair.iterations);
  out << "t\tmass_in_set\tlower_bound\tmargin\tcomponent_margin\n";
  for (const auto& st : report.steps)
    out << st.t << '\t' << real(st.mass_in_set) << '\t' << real(st.lower_bound) << '\t' << real(st.margin)
        << '\t' << real(st.component_margin) << '\n';
  return kExitOk;
}

int run_oracle(const Options& o, std::ostream& out) {
  const Graph g = load_graph(o);
  const PhiK res = exact_phi_k(g, o.k, o.max_vertices);
  Record rec(out);
  rec("k", o.k)("phi_k", to_string(res.phi))("phi_k_value", res.phi.value());
  rec("size", res.witness.members.size())("volume", res.witness.volume)("boundary", res.witness.boundary);
  if (!o.members_out.empty()) write_members(o.members_out, g, res.witness.members);
  return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Small sparse cuts by random walks", "sparsecut"};
  app.require_subcommand(1);
  Options o;

  auto* workers = app.add_option("--workers", o.workers, "OpenMP workers for global sweeps (0 = runtime default; default from SPARSECUT_WORKERS)")
                      ->check(CLI::NonNegativeNumber);
  workers->capture_default_str();
  app.add_flag("-v,--verbose", o.verbosity, "Report progress on the error stream");

  auto graph_arg = [&o](CLI::App* sub) {
    sub->add_option("graph", o.graph, "Edge-list file")->required();
  };
  auto k_opt = [&o](CLI::App* sub) {
    sub->add_option("--k", o.k, "Volume budget")->required()->check(CLI::Range(Volume{2}, std::numeric_limits<Volume>::max()));
  };
  auto eps_opt = [&o](CLI::App* sub) {
    sub->add_option("--epsilon", o.epsilon, "Volume exponent slack")->required()->check(CLI::PositiveNumber);
  };

  auto* load = app.add_subcommand("load", "Load an edge list and print a summary");
  graph_arg(load);

  auto* gen = app.add_subcommand("generate", "Write a synthetic graph and its metadata sidecar");
  gen->add_option("family", o.family, "ring-of-cliques | barbell | path | complete | erdos-renyi")
      ->required()
      ->check(CLI::IsMember({"ring-of-cliques", "barbell", "path", "complete", "erdos-renyi"}));
  gen->add_option("--out", o.out_path, "Edge-list output path")->required();
  gen->add_option("--r", o.r, "Number of cliques")->check(CLI::Range(3, 1 << 20));
  gen->add_option("--s", o.s, "Clique size")->check(CLI::Range(2, 1 << 20));
  gen->add_option("--n", o.n, "Vertex count")->check(CLI::Range(2U, 1U << 30));
  gen->add_option("--p", o.edge_p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--rng-seed", o.rng_seed, "Generator seed");

  auto* global = app.add_subcommand("global", "Bicriteria small sparsest cut, volume <= k^(1+eps)");
  graph_arg(global);
  k_opt(global);
  eps_opt(global);
  global->add_option("--horizon", o.horizon, "Override the walk length")->check(CLI::NonNegativeNumber);
  global->add_option("--members-out", o.members_out, "Write the cut's vertices here");

  auto* tight = app.add_subcommand("global-tight", "Small sparsest cut with volume <= (1+eps) k");
  graph_arg(tight);
  k_opt(tight);
  eps_opt(tight);
  tight->add_option("--horizon", o.horizon, "Override the walk length")->check(CLI::NonNegativeNumber);
  tight->add_option("--members-out", o.members_out, "Write the cut's vertices here");

  auto* local = app.add_subcommand("local", "Truncated-walk local partitioning from one seed");
  graph_arg(local);
  local->add_option("--seed", o.seed, "Start vertex")->required();
  k_opt(local);
  local->add_option("--phi", o.phi, "Target conductance")->required()->check(CLI::Range(1e-300, 1.0));
  eps_opt(local);
  local->add_option("--members-out", o.members_out, "Write the cut's vertices here");

  auto* curve = app.add_subcommand("curve", "Dump the walk's Lovasz-Simonovits curve as TSV");
  graph_arg(curve);
  curve->add_option("--seed", o.seed, "Start vertex")->required();
  curve->add_option("--steps", o.steps, "Walk length")->required()->check(CLI::NonNegativeNumber);
  curve->add_option("--truncation", o.truncation, "Truncation threshold (0 = exact)")->check(CLI::NonNegativeNumber);
  curve->add_option("--walk-out", o.out_path, "Also write the distribution as vertex/mass TSV");

  auto* certify = app.add_subcommand("certify", "Spectral retention certificate for a vertex set");
  graph_arg(certify);
  certify->add_option("--set", o.set_path, "File with one vertex id per line")->required();
  certify->add_option("--steps", o.certify_steps, "Walk length")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Exact phi_k by exhaustive enumeration");
  graph_arg(oracle);
  k_opt(oracle);
  oracle->add_option("--max-vertices", o.max_vertices, "Refuse larger graphs")->capture_default_str();
  oracle->add_option("--members-out", o.members_out, "Write the witness's vertices here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // parameter checks that need no graph
  try {
    if (workers->count() == 0) o.workers = workers_from_environment();
    if (*local) {
      if (!(o.epsilon > 2.0 / static_cast<double>(o.k))) throw DomainError("local needs epsilon > 2 / k");
    }
    if (*tight) {
      const double kd = static_cast<double>(o.k);
      if (!(o.epsilon > 2.0 * std::log(kd) / kd)) throw DomainError("global-tight needs epsilon > 2 ln k / k");
    }
    if (*gen) {
      const bool planted = o.family == "ring-of-cliques" || o.family == "barbell";
      if (o.family == "ring-of-cliques" && (o.r < 3 || o.s < 3))
        throw DomainError("ring-of-cliques needs --r >= 3 and --s >= 3");
      if (o.family == "barbell" && o.s < 2) throw DomainError("barbell needs --s >= 2");
      if (!planted && o.n < 2) throw DomainError(o.family + " needs --n >= 2");
    }
  } catch (const DomainError& e) {
    err << "sparsecut: " << e.what() << '\n';
    return kExitUsage;
  }

  set_worker_count(o.workers);
  o.log = &err;
  try {
    if (*load) return run_load(o, out);
    if (*gen) return run_generate(o, out);
    if (*global) return run_global(o, false, out);
    if (*tight) return run_global(o, true, out);
    if (*local) return run_local(o, out);
    if (*curve) return run_curve(o, out);
    if (*certify) return run_certify(o, out);
    if (*oracle) return run_oracle(o, out);
  } catch (const std::exception& e) {
    err << "sparsecut: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace sparsecut::cli
