// shapesep command line: instance generation, graph extraction, tameness
// certification, coloring profiles, separators, the box dichotomy, property
// suites, and scaling experiments.
//
// Exit codes: 0 success, 1 operational error, 2 a certificate or bound
// violation was found (CI can gate on the mathematical properties).

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "shapesep/errors.hpp"
#include "shapesep/instance_io.hpp"
#include "shapesep/separators.hpp"
#include "shapesep/suites.hpp"

using namespace shapesep;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

int thread_count() {
  if (const char* env = std::getenv("SHAPESEP_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

InstanceBundle generate(const std::string& family, const std::map<std::string, std::string>& given,
                        uint64_t seed) {
  auto get_int = [&](const std::string& key, int fallback) {
    auto it = given.find(key);
    return it == given.end() ? fallback : std::stoi(it->second);
  };
  auto get_str = [&](const std::string& key, const std::string& fallback) {
    auto it = given.find(key);
    return it == given.end() ? fallback : it->second;
  };
  if (family == "narrow-rect") {
    const int m = get_int("m", 4);
    const Rational thickness = rat_from_string(get_str("thickness", "1/" + std::to_string(20 * m)));
    return narrow_rectangles_bipartite(m, thickness);
  }
  if (family == "wedge") return wedge_family(get_int("m", 4));
  if (family == "star-path") return star_path_boxes(get_int("r", 3), get_int("t", 4));
  if (family == "sstar")
    return sstar_instance(get_int("h_max", 4), get_int("per_level", 48), seed);
  if (family == "lshape") return lshape_clique(get_int("m", 5));
  if (family == "random-box") {
    const std::string profile = get_str("profile", "bounded");
    return random_box_instance(get_int("n", 100), get_int("d", 2),
                               profile == "heavy_tail" || profile == "heavy-tail"
                                   ? AspectProfile::HeavyTail
                                   : AspectProfile::Bounded,
                               seed, std::stod(get_str("target_depth", "1.0")));
  }
  if (family == "hub-star") {
    // a graph family: wrap the graph in a bundle without geometry
    throw InvalidParameterError(
        "hub-star has no geometric representation; use `gen --family hub-star` via the graph "
        "output flag --graph-out");
  }
  throw InvalidParameterError("unknown family '" + family + "'");
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

struct LoadedInput {
  bool has_geometry = false;
  InstanceBundle bundle;
  Graph graph;
};

LoadedInput load_input(const std::string& path) {
  LoadedInput in;
  const json j = load_json(path);
  if (j.contains("placements")) {
    in.has_geometry = true;
    in.bundle = bundle_from_json(j);
    in.graph = build_intersection_graph(in.bundle.representation);
  } else {
    in.graph = graph_from_json(j);
  }
  return in;
}

Ordering resolve_ordering(const LoadedInput& in, const std::string& order,
                          const std::string& order_file) {
  if (!order_file.empty())
    return Ordering::from_order(load_json(order_file).get<std::vector<int>>());
  if (order == "volume") {
    if (!in.has_geometry)
      throw InvalidParameterError("volume ordering needs a geometric instance, not a bare graph");
    return volume_ordering(in.bundle.representation);
  }
  if (order == "given") {
    if (in.bundle.ordering) return *in.bundle.ordering;
    return Ordering::identity(in.graph.n());
  }
  if (order == "identity") return Ordering::identity(in.graph.n());
  throw InvalidParameterError("unknown ordering '" + order + "'");
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
}

int cmd_gen(const std::string& family, const std::vector<std::string>& params, uint64_t seed,
            const std::string& out) {
  std::map<std::string, std::string> kv;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw InvalidParameterError("param must be key=value: " + p);
    kv[p.substr(0, eq)] = p.substr(eq + 1);
  }
  if (family == "hub-star") {
    const HubStarResult hub = hub_star_family(parse_int_list(kv.count("levels") ? kv["levels"] : "4,3"),
                                              parse_int_list(kv.count("lengths") ? kv["lengths"] : "3"));
    json j = graph_to_json(hub.graph);
    j["ordering"] = hub.ordering.order;
    j["level_sizes"] = hub.level_sizes;
    emit(out, j.dump(2) + "\n");
    std::cout << "hub-star n=" << hub.graph.n() << " m=" << hub.graph.m() << "\n";
    return kExitOk;
  }
  const InstanceBundle b = generate(family, kv, seed);
  InstanceBundle stamped = b;
  stamped.provenance.seed = seed;
  save_json(out.empty() ? family + ".json" : out, bundle_to_json(stamped));
  std::cout << family << " n=" << b.representation.n() << " d=" << b.representation.dimension
            << " c=" << b.measured_thinness << " ("
            << (b.thinness_status == CertStatus::Exact ? "exact" : "sampled") << ")";
  if (b.measured_s_star)
    std::cout << " s*="
              << (scalar_is_infinite(*b.measured_s_star) ? std::string("inf")
                                                         : b.measured_s_star->str());
  std::cout << "\n";
  return kExitOk;
}

int cmd_graph(const std::string& in_path, const std::string& out, const std::string& mode) {
  const LoadedInput in = load_input(in_path);
  if (!in.has_geometry) {
    emit(out, graph_to_json(in.graph).dump(2) + "\n");
    return kExitOk;
  }
  const Graph g = build_intersection_graph(
      in.bundle.representation,
      mode == "pairwise" ? GraphBuildMode::Pairwise : GraphBuildMode::Auto);
  emit(out, graph_to_json(g).dump(2) + "\n");
  std::cerr << "n=" << g.n() << " m=" << g.m() << "\n";
  return kExitOk;
}

int cmd_tame_check(const std::string& in_path, int c, const std::string& s_str,
                   const std::string& out) {
  const LoadedInput in = load_input(in_path);
  if (!in.has_geometry) throw InvalidParameterError("tame-check needs a geometric instance");
  const TamenessCertificate cert =
      check_tame(in.bundle.representation, c, Scalar(rat_from_string(s_str)));
  emit(out, tameness_to_json(cert).dump(2) + "\n");
  return cert.certified() ? kExitOk : kExitViolation;
}

int cmd_col(const std::string& in_path, const std::string& order, const std::string& order_file,
            int r_max, const std::string& format, const std::string& out) {
  const LoadedInput in = load_input(in_path);
  const Ordering ord = resolve_ordering(in, order, order_file);
  const ColoringProfile prof = col_profile(in.graph, ord, r_max);

  ComposedBound bound;
  if (in.has_geometry) {
    const Representation& rep = in.bundle.representation;
    const TamenessCertificate cert = check_tame(rep, rep.n(), Scalar(Rational(1'000'000'000)));
    bound = compose_volume_order_bound(std::max(1, cert.measured_thinness),
                                       std::max(1.0, cert.measured_s_star.to_double()),
                                       rep.dimension);
  } else {
    bound = compose_volume_order_bound(1, 1, 1);
  }
  if (format == "json") {
    json j;
    j["constants"] = {{"c", bound.c},
                      {"s", bound.s},
                      {"d", bound.d},
                      {"k_prime", bound.k_prime},
                      {"s_prime", bound.s_prime},
                      {"delta", bound.delta}};
    for (const auto& row : prof.rows)
      j["rows"].push_back({{"r", row.r},
                           {"col", row.value},
                           {"argmax", row.argmax},
                           {"bound", bound.bound(row.r)}});
    emit(out, j.dump(2) + "\n");
  } else {
    emit(out, col_profile_csv(prof, bound));
  }
  // violations of the composed bound are a gate condition for tame instances
  if (in.has_geometry && order == "volume")
    for (const auto& row : prof.rows)
      if (row.value > bound.bound(row.r)) return kExitViolation;
  return kExitOk;
}

int cmd_sep(const std::string& in_path, const std::string& method, int r,
            const std::string& order, const std::string& order_file, const std::string& out) {
  const LoadedInput in = load_input(in_path);
  SeparatorResult res;
  if (method == "exact") {
    res = exact_min_balanced_separator(in.graph);
  } else if (method == "bfs-layer") {
    res = bfs_layer_separator(in.graph);
  } else if (method == "ordering") {
    res = ordering_separator(in.graph, resolve_ordering(in, order, order_file), r);
  } else {
    throw InvalidParameterError("unknown separator method '" + method + "'");
  }
  emit(out, separator_result_to_json(res).dump(2) + "\n");
  return res.balanced ? kExitOk : kExitViolation;
}

int cmd_dichotomy(const std::string& in_path, int k, const std::string& out) {
  const LoadedInput in = load_input(in_path);
  if (!in.has_geometry) throw InvalidParameterError("dichotomy needs a geometric instance");
  std::vector<Box> boxes;
  const Representation& rep = in.bundle.representation;
  for (int v = 0; v < rep.n(); ++v) {
    const Shape s = rep.resolved(v);
    if (!shape_is_box(s))
      throw InvalidParameterError("dichotomy applies to box instances only");
    boxes.push_back(std::get<Box>(s));
  }
  const DichotomyResult res = boxes_dichotomy(boxes, k);
  emit(out, dichotomy_to_json(res).dump(2) + "\n");
  return verify_dichotomy(boxes, k, res) ? kExitOk : kExitViolation;
}

int cmd_verify_lemmas(int pairs, int families, int cases, uint64_t seed) {
  const std::vector<int> dims = {1, 2, 3};
  const std::vector<SuiteResult> suites = {
      run_rel1_suite(pairs, dims, seed),      run_rel2_suite(pairs, dims, seed),
      run_cmp_suite(pairs, dims, seed),       run_dichotomy_suite(families, 150, 4, seed),
      run_combip_suite(cases, seed)};
  bool clean = true;
  for (const auto& s : suites) {
    std::cout << s.name << ": " << s.cases << " cases, " << s.violations << " violations, "
              << s.skipped << " skipped\n";
    clean = clean && s.clean();
  }
  std::cout << "unknown-subverdicts treated vacuously: " << relations_unknown_count() << "\n";
  return clean ? kExitOk : kExitViolation;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir) {
  const json cfg = load_json(config_path);
  if (!cfg.contains("seed")) throw InvalidParameterError("experiment config requires a seed");
  const uint64_t seed = cfg.at("seed").get<uint64_t>();
  const std::string family = cfg.value("family", "random-box");
  const std::vector<long> sizes = cfg.value("sizes", std::vector<long>{});
  if (sizes.empty()) throw InvalidParameterError("experiment config needs a non-empty size ladder");
  const std::string method = cfg.value("method", "bfs-layer");
  const int r_max = cfg.value("r_max", 8);
  const int lemma_pairs = cfg.value("lemma_pairs", 200);
  std::map<std::string, std::string> params;
  if (cfg.contains("params"))
    for (const auto& [k, v] : cfg.at("params").items())
      params[k] = v.is_string() ? v.get<std::string>() : v.dump();

  fs::create_directories(out_dir);

  struct Rung {
    long n = 0;
    long sep_size = -1;
    bool balanced = false;
    int measured_c = 0;
    bool col_ok = true;
    std::string error;
    std::string col_csv;
  };
  std::vector<Rung> rungs(sizes.size());

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= sizes.size()) break;
      Rung& rung = rungs[i];
      rung.n = sizes[i];
      try {
        std::map<std::string, std::string> p = params;
        if (family == "random-box") p["n"] = std::to_string(sizes[i]);
        if (family == "sstar") p["per_level"] = std::to_string(sizes[i]);
        if (family == "star-path") p["r"] = std::to_string(sizes[i]);
        const uint64_t rung_seed = stable_mix(seed, stable_mix(i, stable_hash("gen")));
        const InstanceBundle b = generate(family, p, rung_seed);
        rung.measured_c = b.measured_thinness;
        const Graph g = build_intersection_graph(b.representation);
        rung.n = g.n();

        SeparatorResult sep;
        if (method == "ordering")
          sep = ordering_separator(g, volume_ordering(b.representation), std::max(2, r_max / 2));
        else
          sep = bfs_layer_separator(g);
        rung.sep_size = sep.size();
        rung.balanced = sep.balanced;

        const Ordering ord = volume_ordering(b.representation);
        const ColoringProfile prof = col_profile(g, ord, r_max);
        const TamenessCertificate cert =
            check_tame(b.representation, g.n(), Scalar(Rational(1'000'000'000)));
        const ComposedBound bound = compose_volume_order_bound(
            std::max(1, cert.measured_thinness), std::max(1.0, cert.measured_s_star.to_double()),
            b.representation.dimension);
        rung.col_csv = col_profile_csv(prof, bound);
        for (const auto& row : prof.rows)
          if (row.value > bound.bound(row.r)) rung.col_ok = false;
      } catch (const std::exception& e) {
        rung.error = e.what(); // non-fatal per-instance policy
      }
    }
  };
  std::vector<std::thread> pool;
  const int threads = std::min<int>(thread_count(), static_cast<int>(sizes.size()));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<long> fit_sizes, fit_seps;
  bool all_balanced = true, all_col_ok = true;
  for (const auto& rung : rungs) {
    if (!rung.error.empty()) continue;
    fit_sizes.push_back(rung.n);
    fit_seps.push_back(rung.sep_size);
    all_balanced = all_balanced && rung.balanced;
    all_col_ok = all_col_ok && rung.col_ok;
    write_file(out_dir + "/col_" + std::to_string(rung.n) + ".csv", rung.col_csv);
  }
  int dimension = 2;
  if (params.count("d")) dimension = std::stoi(params.at("d"));

  json summary;
  if (fit_sizes.size() >= 2) {
    const ScalingFit fit = fit_scaling(family, method, dimension, fit_sizes, fit_seps);
    write_file(out_dir + "/scaling.csv", scaling_csv(fit));
    save_json(out_dir + "/scaling.json", scaling_fit_to_json(fit));
    summary["scaling"] = scaling_fit_to_json(fit);
  }

  const std::vector<int> dims = {1, 2, 3};
  json suites;
  bool suites_clean = true;
  for (const SuiteResult& s :
       {run_rel1_suite(lemma_pairs, dims, seed), run_rel2_suite(lemma_pairs, dims, seed),
        run_cmp_suite(lemma_pairs, dims, seed), run_dichotomy_suite(lemma_pairs, 100, 4, seed),
        run_combip_suite(lemma_pairs, seed)}) {
    suites[s.name] = {{"cases", s.cases}, {"violations", s.violations}, {"skipped", s.skipped}};
    suites_clean = suites_clean && s.clean();
  }
  summary["lemma_suites"] = std::move(suites);
  json per_rung = json::array();
  for (const auto& rung : rungs) {
    json r;
    r["n"] = rung.n;
    r["separator_size"] = rung.sep_size;
    r["balanced"] = rung.balanced;
    r["measured_c"] = rung.measured_c;
    r["col_bound_ok"] = rung.col_ok;
    if (!rung.error.empty()) r["error"] = rung.error;
    per_rung.push_back(std::move(r));
  }
  summary["instances"] = std::move(per_rung);
  summary["seed"] = seed;
  summary["family"] = family;
  save_json(out_dir + "/summary.json", summary);
  std::cout << "experiment written to " << out_dir << "\n";

  if (!all_balanced || !all_col_ok || !suites_clean) return kExitViolation;
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric intersection graphs: tameness, coloring numbers, separators"};
  app.require_subcommand(1);

  std::string family = "random-box", out, in_path, order = "volume", order_file, format = "csv";
  std::string method = "bfs-layer", s_str = "1", config_path, mode = "sweep";
  std::vector<std::string> params;
  uint64_t seed = 1;
  int c = 2, r_max = 8, r = 2, k = 2;
  int pairs = 1000, families = 200, cases = 500;

  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("--family", family, "narrow-rect|wedge|star-path|hub-star|sstar|lshape|random-box");
  gen->add_option("--param,-p", params, "generator parameters as key=value");
  gen->add_option("--seed", seed, "root seed");
  gen->add_option("--out", out, "output path");

  auto* graph_cmd = app.add_subcommand("graph", "intersection graph of an instance");
  graph_cmd->add_option("--in", in_path)->required();
  graph_cmd->add_option("--out", out);
  graph_cmd->add_option("--mode", mode, "sweep|pairwise");

  auto* tame = app.add_subcommand("tame-check", "certify (c, sqsubseteq_s)-tameness");
  tame->add_option("--in", in_path)->required();
  tame->add_option("--c", c)->required();
  tame->add_option("--s", s_str)->required();
  tame->add_option("--out", out);

  auto* col = app.add_subcommand("col", "coloring-number profile under an ordering");
  col->add_option("--in", in_path)->required();
  col->add_option("--order", order, "volume|given|identity");
  col->add_option("--order-file", order_file);
  col->add_option("--rmax", r_max);
  col->add_option("--format", format, "csv|json");
  col->add_option("--out", out);

  auto* sep = app.add_subcommand("sep", "balanced separator");
  sep->add_option("--in", in_path)->required();
  sep->add_option("--method", method, "exact|bfs-layer|ordering");
  sep->add_option("--r", r, "radius parameter for the ordering method");
  sep->add_option("--order", order);
  sep->add_option("--order-file", order_file);
  sep->add_option("--out", out);

  auto* dich = app.add_subcommand("dichotomy", "box projection dichotomy");
  dich->add_option("--in", in_path)->required();
  dich->add_option("--k", k)->required();
  dich->add_option("--out", out);

  auto* exp = app.add_subcommand("experiment", "scaling ladder + lemma suites");
  exp->add_option("--config", config_path)->required();
  exp->add_option("--out", out)->required();

  auto* verify = app.add_subcommand("verify-lemmas", "run the lemma property suites");
  verify->add_option("--pairs", pairs);
  verify->add_option("--families", families);
  verify->add_option("--cases", cases);
  verify->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(family, params, seed, out);
    if (graph_cmd->parsed()) return cmd_graph(in_path, out, mode);
    if (tame->parsed()) return cmd_tame_check(in_path, c, s_str, out);
    if (col->parsed()) return cmd_col(in_path, order, order_file, r_max, format, out);
    if (sep->parsed()) return cmd_sep(in_path, method, r, order, order_file, out);
    if (dich->parsed()) return cmd_dichotomy(in_path, k, out);
    if (exp->parsed()) return cmd_experiment(config_path, out);
    if (verify->parsed()) return cmd_verify_lemmas(pairs, families, cases, seed);
  } catch (const SizeCapError& e) {
    std::cerr << "error: " << e.what() << "; use a heuristic method instead\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
