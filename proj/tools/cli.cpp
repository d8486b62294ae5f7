#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "expdecomp/expander_decomp.hpp"
#include "expdecomp/generators.hpp"
#include "expdecomp/low_diam.hpp"
#include "expdecomp/sparse_cut.hpp"
#include "expdecomp/triangles.hpp"
#include "expdecomp/verify.hpp"

namespace expdecomp::cli {

using nlohmann::ordered_json;

std::uint64_t resolve_seed(const char* env_value, bool flag_given, std::uint64_t flag_value) {
  if (env_value != nullptr && *env_value != '\0') {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env_value, &pos);
      if (pos != std::string(env_value).size()) throw ParseError("EXPANDER_SEED is not an integer");
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("EXPANDER_SEED is not an integer");
    }
  }
  return flag_given ? flag_value : 0;
}

namespace {

struct Options {
  std::string graph_path;
  std::string spec;
  std::vector<std::string> specs;
  std::uint64_t seed_flag = 0;
  std::string profile = "desk";
  std::string mode = "simulated";
  unsigned threads = 1;
  double epsilon = 0.5;
  std::uint32_t k = 2;
  double phi = 0.01;
  double beta = 0.2;
  double p = 0.0;
  double K = 10.0;
  double c_h = 1.0;
  double k_phi = 311328.0;
  double c_r = 1.0;
  double c_q = 1.0;
  double phi_floor = 0.05;
  std::uint32_t trials = 1;
  std::string out;
  std::string input;
  std::string format = "csv";
  std::string algo = "decompose";
  bool verify = false;
};

struct Ctx {
  std::string sub;
  Options opt;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

NetworkConfig network_config(const Options& o) {
  NetworkConfig nc;
  nc.mode = o.mode == "accounted" ? ExecutionMode::kAccounted : ExecutionMode::kSimulated;
  nc.threads = o.threads;
  return nc;
}

SparseCutConfig cut_config(const Options& o) {
  SparseCutConfig c;
  c.profile = o.profile == "paper" ? Profile::kPaper : Profile::kDesk;
  c.constants = WalkConstants::for_profile(c.profile);
  c.c_h = o.c_h;
  c.k_phi = o.k_phi;
  c.p = o.p;
  c.phi_floor = o.phi_floor;
  return c;
}

DecompConfig decomp_config(const Options& o) {
  DecompConfig c;
  c.cut = cut_config(o);
  c.network = network_config(o);
  c.c_h = o.c_h;
  c.lowdiam_K = o.K;
  return c;
}

ordered_json effective_config(const Ctx& c) {
  const Options& o = c.opt;
  ordered_json j;
  j["subcommand"] = c.sub;
  j["graph"] = o.graph_path;
  j["spec"] = o.spec;
  if (!o.specs.empty()) j["specs"] = o.specs;
  j["seed"] = c.seed;
  j["profile"] = o.profile;
  j["mode"] = o.mode;
  j["threads"] = o.threads;
  j["epsilon"] = o.epsilon;
  j["k"] = o.k;
  j["phi"] = o.phi;
  j["beta"] = o.beta;
  j["p"] = o.p;
  j["constants"] = {{"K", o.K}, {"C_H", o.c_h}, {"K_Phi", o.k_phi}, {"C_R", o.c_r}, {"C_Q", o.c_q},
                    {"phi_floor", o.phi_floor}};
  j["trials"] = o.trials;
  if (!o.algo.empty() && c.sub == "bench") j["algo"] = o.algo;
  return j;
}

Graph load_graph(const Options& o, std::uint64_t seed) {
  if (!o.graph_path.empty() && !o.spec.empty()) throw ParseError("give either --graph or --spec");
  if (!o.graph_path.empty()) return read_graph_file(o.graph_path);
  if (!o.spec.empty()) return generate(parse_spec(o.spec, seed));
  throw ParseError("a graph is required (--graph FILE or --spec SPEC)");
}

ordered_json ledger_json(const RoundLedger& l) {
  ordered_json phases = ordered_json::object();
  for (const auto& e : l.entries()) {
    phases[e.phase] = {{"rounds", e.counters.rounds}, {"messages", e.counters.messages}, {"max_bits", e.counters.max_bits}};
  }
  const auto t = l.totals();
  return {{"total", t.rounds}, {"messages", t.messages}, {"max_bits", t.max_bits}, {"phases", phases}};
}

double to_double(const Rational& r) { return static_cast<double>(r.num()) / static_cast<double>(r.den()); }

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
}

int cmd_gen(const Ctx& c, std::ostream& out) {
  if (c.opt.spec.empty()) throw ParseError("gen needs --spec");
  const Graph g = generate(parse_spec(c.opt.spec, c.seed));
  std::ostringstream os;
  write_graph(os, g);
  emit(c.opt, out, os.str());
  return kExitOk;
}

int cmd_sparse_cut(const Ctx& c, std::ostream& out) {
  const Graph g = load_graph(c.opt, c.seed);
  Network net(g, network_config(c.opt));
  const SparseCutResult r = nearly_balanced_sparse_cut(net, c.opt.phi, cut_config(c.opt), c.seed);
  ordered_json j;
  j["config"] = effective_config(c);
  if (r.cut) {
    j["cut"] = {{"members", r.cut->members},
                {"phi", to_double(r.cut->conductance)},
                {"vol", r.cut->vol_s},
                {"bal", to_double(r.cut->balance)},
                {"boundary", r.cut->boundary}};
  } else {
    j["cut"] = nullptr;
  }
  j["phi_internal"] = r.phi_internal;
  j["p"] = r.p;
  j["iterations"] = r.partition.iterations;
  j["rounds"] = ledger_json(net.ledger());
  emit(c.opt, out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_lowdiam(const Ctx& c, std::ostream& out) {
  const Graph g = load_graph(c.opt, c.seed);
  ordered_json j;
  j["config"] = effective_config(c);
  ordered_json runs = ordered_json::array();
  for (std::uint32_t t = 0; t < c.opt.trials; ++t) {
    const std::uint64_t seed = c.seed + t;
    Network net(g, network_config(c.opt));
    const LowDiamResult r = low_diam_decomposition(net, c.opt.beta, c.opt.K, seed);
    runs.push_back({{"seed", seed},
                    {"components", r.components.groups()},
                    {"cut_edges", r.cut_edges.size()},
                    {"max_diameter", r.max_diameter},
                    {"rounds", ledger_json(net.ledger())}});
  }
  j["runs"] = runs;
  emit(c.opt, out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_decompose(const Ctx& c, std::ostream& out) {
  const Graph g = load_graph(c.opt, c.seed);
  const DecompConfig cfg = decomp_config(c.opt);
  Network net(g, cfg.network);
  const Decomposition d = expander_decomposition(net, c.opt.epsilon, c.opt.k, c.seed, cfg);
  ordered_json j = ordered_json::parse(decomposition_json(d, cfg));
  j["config"] = effective_config(c);
  emit(c.opt, out, j.dump(2) + "\n");
  return d.verification.pass ? kExitOk : kExitFail;
}

int cmd_triangles(const Ctx& c, std::ostream& out) {
  const Graph g = load_graph(c.opt, c.seed);
  TriangleConfig tc;
  tc.decomp = decomp_config(c.opt);
  tc.router.c_r = c.opt.c_r;
  tc.router.c_q = c.opt.c_q;
  Network net(g, tc.decomp.network);
  const TriangleResult r = triangle_enumeration(net, c.opt.epsilon, c.opt.k, c.seed, tc);
  ordered_json j;
  j["config"] = effective_config(c);
  j["count"] = r.triangles.size();
  j["levels"] = r.levels;
  j["fallback_levels"] = r.fallback_levels;
  j["rounds_charged"] = r.rounds_charged;
  int code = kExitOk;
  if (c.opt.verify && g.num_vertices() <= 2000) {
    const bool ok = r.triangles == brute_force_triangles(g);
    j["verified"] = ok;
    if (!ok) code = kExitFail;
  } else {
    j["verified"] = nullptr;
  }
  j["triangles"] = r.triangles;
  j["reporters"] = r.reporters;
  j["rounds"] = ledger_json(net.ledger());
  emit(c.opt, out, j.dump(2) + "\n");
  return code;
}

int cmd_verify(const Ctx& c, std::ostream& out) {
  if (c.opt.input.empty()) throw ParseError("verify needs --input");
  std::ifstream in(c.opt.input);
  if (!in) throw ParseError("cannot open " + c.opt.input);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed output: ") + e.what());
  }
  const Graph g = load_graph(c.opt, c.seed);
  ordered_json rep;
  rep["config"] = effective_config(c);
  bool pass = false;
  try {
    if (doc.contains("components")) {
      const auto comps = doc.at("components").get<std::vector<std::vector<Vertex>>>();
      for (const auto& comp : comps)
        for (Vertex v : comp)
          if (v >= g.num_vertices()) throw ParseError("component vertex out of range");
      const double eps = doc.contains("epsilon") ? doc.at("epsilon").get<double>() : c.opt.epsilon;
      double phi = c.opt.phi;
      if (doc.contains("phi_k") && doc.at("phi_k").is_number()) phi = doc.at("phi_k").get<double>();
      const VerifyReport r = verify_decomposition(g, comps, eps, phi);
      std::uint64_t claimed = r.inter_edges;
      if (doc.contains("removed")) {
        const auto& rm = doc.at("removed");
        claimed = rm.at("r1").get<std::uint64_t>() + rm.at("r2").get<std::uint64_t>() + rm.at("r3").get<std::uint64_t>();
      }
      const bool recount_ok = r.inter_edges <= claimed;
      ordered_json cj = ordered_json::array();
      for (const auto& cc : r.components) {
        cj.push_back({{"size", cc.members.size()},
                      {"method", method_name(cc.method)},
                      {"pass", cc.pass},
                      {"phi_exact", cc.phi_exact ? ordered_json(to_double(*cc.phi_exact)) : ordered_json(nullptr)},
                      {"best_sweep", cc.best_sweep}});
      }
      pass = r.pass && recount_ok;
      rep["kind"] = "decomposition";
      rep["partition_ok"] = r.partition_ok;
      rep["inter_edges"] = r.inter_edges;
      rep["claimed_removed"] = claimed;
      rep["recount_ok"] = recount_ok;
      rep["inter_fraction"] = r.inter_fraction;
      rep["fraction_ok"] = r.fraction_ok;
      rep["phi"] = phi;
      rep["components"] = cj;
    } else if (doc.contains("triangles")) {
      auto tris = doc.at("triangles").get<std::vector<Triangle>>();
      for (const auto& t : tris)
        for (Vertex v : t)
          if (v >= g.num_vertices()) throw ParseError("triangle vertex out of range");
      const bool valid = verify_triangles(g, tris);
      rep["kind"] = "triangles";
      rep["valid"] = valid;
      pass = valid;
      if (g.num_vertices() <= 2000) {
        std::sort(tris.begin(), tris.end());
        const bool complete = tris == brute_force_triangles(g);
        rep["complete"] = complete;
        pass = pass && complete;
      }
    } else {
      throw ParseError("malformed output: neither components nor triangles");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed output: ") + e.what());
  }
  rep["result"] = pass ? "PASS" : "FAIL";
  emit(c.opt, out, rep.dump(2) + "\n");
  return pass ? kExitOk : kExitFail;
}

struct BenchRow {
  std::string spec;
  std::uint64_t seed = 0;
  std::uint32_t trial = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string phase;
  RoundLedger::Counters counters;
  double wall_ms = 0;
};

int cmd_bench(const Ctx& c, std::ostream& out) {
  std::vector<std::string> specs = c.opt.specs;
  if (!c.opt.spec.empty()) specs.push_back(c.opt.spec);
  if (specs.empty() && c.opt.graph_path.empty()) throw ParseError("bench needs --spec, --specs or --graph");
  if (!c.opt.graph_path.empty()) specs.insert(specs.begin(), "file:" + c.opt.graph_path);
  std::vector<BenchRow> rows;
  for (const auto& s : specs) {
    const Graph g = s.rfind("file:", 0) == 0 ? read_graph_file(s.substr(5)) : generate(parse_spec(s, c.seed));
    for (std::uint32_t t = 0; t < c.opt.trials; ++t) {
      Network net(g, network_config(c.opt));
      const auto start = std::chrono::steady_clock::now();
      if (c.opt.algo == "decompose") {
        DecompConfig cfg = decomp_config(c.opt);
        cfg.verify = false;
        expander_decomposition(net, c.opt.epsilon, c.opt.k, c.seed, cfg);
      } else if (c.opt.algo == "triangles") {
        TriangleConfig tc;
        tc.decomp = decomp_config(c.opt);
        tc.router.c_r = c.opt.c_r;
        tc.router.c_q = c.opt.c_q;
        triangle_enumeration(net, c.opt.epsilon, c.opt.k, c.seed, tc);
      } else if (c.opt.algo == "lowdiam") {
        low_diam_decomposition(net, c.opt.beta, c.opt.K, c.seed);
      } else {
        nearly_balanced_sparse_cut(net, c.opt.phi, cut_config(c.opt), c.seed);
      }
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      BenchRow base{s, c.seed, t, g.num_vertices(), g.num_edges(), "total", net.ledger().totals(), ms};
      rows.push_back(base);
      for (const auto& e : net.ledger().entries()) {
        BenchRow r = base;
        r.phase = e.phase;
        r.counters = e.counters;
        rows.push_back(r);
      }
    }
  }
  std::ostringstream os;
  if (c.opt.format == "json") {
    ordered_json j;
    j["config"] = effective_config(c);
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"spec", r.spec}, {"seed", r.seed}, {"trial", r.trial}, {"n", r.n}, {"m", r.m},
                     {"phase", r.phase}, {"rounds", r.counters.rounds}, {"messages", r.counters.messages},
                     {"max_bits", r.counters.max_bits}, {"wall_ms", r.wall_ms}});
    }
    j["rows"] = arr;
    os << j.dump(2) << "\n";
  } else {
    os << "# config " << effective_config(c).dump() << "\n";
    os << "spec,seed,trial,n,m,phase,rounds,messages,max_bits,wall_ms\n";
    for (const auto& r : rows) {
      os << r.spec << ',' << r.seed << ',' << r.trial << ',' << r.n << ',' << r.m << ',' << r.phase << ','
         << r.counters.rounds << ',' << r.counters.messages << ',' << r.counters.max_bits << ',' << r.wall_ms << "\n";
    }
  }
  emit(c.opt, out, os.str());
  return kExitOk;
}

void add_graph_opts(CLI::App* s, Options& o) {
  s->add_option("--graph", o.graph_path, "edge-list file ('p n m' header, one 'u v' per line)");
  s->add_option("--spec", o.spec, "generator spec, e.g. grid:6x6, chain:3:8:1, gnp:60:0.2");
}

void add_common_opts(CLI::App* s, Options& o) {
  s->add_option("--profile", o.profile, "constants profile")->check(CLI::IsMember({"desk", "paper"}));
  s->add_option("--mode", o.mode, "execution mode")->check(CLI::IsMember({"simulated", "accounted"}));
  s->add_option("--threads", o.threads, "simulator threads")->check(CLI::PositiveNumber);
  s->add_option("--C-H", o.c_h, "constant of h(theta)");
  s->add_option("--K-Phi", o.k_phi, "recorded Partition conductance constant");
  s->add_option("--phi-floor", o.phi_floor, "desk clamp of the internal phi");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Ctx ctx;
  Options& o = ctx.opt;
  CLI::App app{"Distributed expander decomposition and triangle enumeration"};
  app.name(args.empty() ? "expdecomp" : args[0]);
  app.require_subcommand(1, 1);
  std::uint64_t seed_flag = 0;
  std::vector<CLI::Option*> seed_opts;

  auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
  gen->add_option("--spec", o.spec, "generator spec")->required();
  auto* sc = app.add_subcommand("sparse-cut", "nearly balanced sparse cut");
  add_graph_opts(sc, o);
  add_common_opts(sc, o);
  sc->add_option("--phi", o.phi, "target conductance");
  sc->add_option("--p", o.p, "failure probability (0: 1/n^2)");
  auto* ld = app.add_subcommand("lowdiam", "low-diameter decomposition");
  add_graph_opts(ld, o);
  add_common_opts(ld, o);
  ld->add_option("--beta", o.beta, "cut fraction")->check(CLI::Range(0.0, 1.0));
  ld->add_option("--K", o.K, "sampling constant");
  ld->add_option("--trials", o.trials, "runs with seeds seed, seed+1, ...");
  auto* dc = app.add_subcommand("decompose", "expander decomposition");
  add_graph_opts(dc, o);
  add_common_opts(dc, o);
  dc->add_option("--epsilon", o.epsilon, "removed-edge budget");
  dc->add_option("--k", o.k, "level count")->check(CLI::PositiveNumber);
  dc->add_option("--K", o.K, "low-diameter sampling constant");
  auto* tr = app.add_subcommand("triangles", "triangle enumeration");
  add_graph_opts(tr, o);
  add_common_opts(tr, o);
  auto* tr_eps = tr->add_option("--epsilon", o.epsilon, "removed-edge budget per level (<= 1/6, default 1/6)");
  tr->add_option("--k", o.k, "level count")->check(CLI::PositiveNumber);
  tr->add_option("--C-R", o.c_r, "router constant");
  tr->add_option("--C-Q", o.c_q, "router log exponent");
  tr->add_flag("--verify", o.verify, "compare with the brute-force list (n <= 2000)");
  auto* vf = app.add_subcommand("verify", "re-check a decompose or triangles output against the graph");
  add_graph_opts(vf, o);
  vf->add_option("--input", o.input, "JSON output to check")->required();
  vf->add_option("--epsilon", o.epsilon, "budget when the input has none");
  vf->add_option("--phi", o.phi, "conductance when the input has no phi_k");
  auto* bn = app.add_subcommand("bench", "metrics per run and phase");
  add_graph_opts(bn, o);
  add_common_opts(bn, o);
  bn->add_option("--specs", o.specs, "several generator specs");
  bn->add_option("--algo", o.algo, "algorithm")->check(CLI::IsMember({"decompose", "triangles", "lowdiam", "sparse-cut"}));
  bn->add_option("--trials", o.trials, "repetitions with the same seed");
  bn->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  auto* bn_eps = bn->add_option("--epsilon", o.epsilon, "removed-edge budget (triangles default 1/6)");
  bn->add_option("--k", o.k, "level count")->check(CLI::PositiveNumber);
  bn->add_option("--phi", o.phi, "target conductance (sparse-cut)");
  bn->add_option("--beta", o.beta, "cut fraction (lowdiam)");
  bn->add_option("--K", o.K, "low-diameter sampling constant");
  for (auto* s : {gen, sc, ld, dc, tr, vf, bn}) {
    seed_opts.push_back(s->add_option("--seed", seed_flag, "seed (EXPANDER_SEED overrides)"));
    s->add_option("--out", o.out, "output path (default stdout)");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    for (auto* s : app.get_subcommands()) ctx.sub = s->get_name();
    bool given = false;
    for (auto* so : seed_opts) given = given || so->count() > 0;
    ctx.seed = resolve_seed(std::getenv("EXPANDER_SEED"), given, seed_flag);
    ctx.seed_given = given;
    // triangle enumeration accepts only eps <= 1/6
    const bool tri = ctx.sub == "triangles" || (ctx.sub == "bench" && o.algo == "triangles");
    if (tri && tr_eps->count() == 0 && bn_eps->count() == 0) o.epsilon = 1.0 / 6.0;
    if (ctx.sub == "gen") return cmd_gen(ctx, out);
    if (ctx.sub == "sparse-cut") return cmd_sparse_cut(ctx, out);
    if (ctx.sub == "lowdiam") return cmd_lowdiam(ctx, out);
    if (ctx.sub == "decompose") return cmd_decompose(ctx, out);
    if (ctx.sub == "triangles") return cmd_triangles(ctx, out);
    if (ctx.sub == "verify") return cmd_verify(ctx, out);
    return cmd_bench(ctx, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BadEpsilon& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BadPhi& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Infeasible& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace expdecomp::cli
