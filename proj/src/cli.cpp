#include "tropmed/cli.hpp"

#include "tropmed/consensus.hpp"
#include "tropmed/fw_set.hpp"
#include "tropmed/io.hpp"
#include "tropmed/lp.hpp"
#include "tropmed/transport.hpp"
#include "tropmed/tree_gen.hpp"
#include "tropmed/trees.hpp"
#include "tropmed/tropical.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>

namespace tropmed {

namespace {

using json = nlohmann::ordered_json;

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return in;
}

json rational_matrix(const std::vector<std::vector<Rat>>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const Rat& v : row) r.push_back(format_rational(v));
    out.push_back(std::move(r));
  }
  return out;
}

json plan_to_json(const TransportPlan& plan) {
  json j;
  j["flow"] = rational_matrix(plan.flow);
  json basis = json::array();
  for (const auto& [i, k] : plan.basis) basis.push_back(json::array({i, k}));
  j["basis"] = std::move(basis);
  j["objective"] = format_rational(plan.objective);
  return j;
}

json polytrope_to_json(const Polytrope& poly) {
  json j;
  j["p_star"] = format_rational(poly.p_star);
  j["bounds"] = rational_matrix(poly.bounds);
  json verts = json::array();
  for (const TropicalPoint& v : tropical_vertices(poly)) {
    json coords = json::array();
    for (const Rat& c : v.coords()) coords.push_back(format_rational(c));
    verts.push_back(std::move(coords));
  }
  j["tropical_vertices"] = std::move(verts);
  j["dimension"] = dimension(poly);
  return j;
}

SiteMatrix staircase_matrix(int m, int n) {
  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = Rat(i * j);
  return SiteMatrix(std::move(rows));
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

int cmd_consensus(const std::string& input, const std::string& weights_path,
                  bool adjust, bool as_json, const std::string& csv_path,
                  std::ostream& out) {
  auto in = open_or_throw(input);
  std::vector<PhyloTree> trees = read_newick_file(in);
  std::vector<Int> weights(trees.size(), Int(1));
  if (!weights_path.empty()) {
    auto win = open_or_throw(weights_path);
    weights = read_weights(win);
    if (weights.size() != trees.size())
      throw std::invalid_argument("weight count does not match tree count");
  }
  ConsensusOptions options;
  options.adjust_equidistant = adjust;
  ConsensusResult result = tropical_median(trees, weights, options);

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::invalid_argument("cannot write '" + csv_path + "'");
    write_ultrametric_csv(csv, {result.ultrametric});
  }

  if (!as_json) {
    out << emit_newick(result.tree) << "\n";
    return 0;
  }

  json j;
  j["newick"] = emit_newick(result.tree);
  j["taxa"] = result.ultrametric.taxa;
  json dist = json::array();
  for (const Rat& v : result.ultrametric.d) dist.push_back(format_rational(v));
  j["ultrametric"] = std::move(dist);
  j["fw_dimension"] = result.fw_dimension;
  j["tropical_vertex_count"] = result.tropical_vertex_count;
  j["p_star"] = format_rational(result.p_star);

  TropicalPoint median(result.ultrametric.d);
  json per_input = json::array();
  for (const PhyloTree& t : trees) {
    Ultrametric u =
        tree_to_ultrametric(t.is_equidistant() ? t : make_equidistant(t));
    per_input.push_back(
        format_rational(d_asym(TropicalPoint(u.d), median)));
  }
  j["input_distances"] = std::move(per_input);
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_fw_point(const std::string& input, bool header, bool dump_plan,
                 std::ostream& out) {
  auto in = open_or_throw(input);
  SiteMatrix sites = read_site_matrix(in, header);
  TransportPlan plan = solve_transportation(sites);
  if (dump_plan) {
    out << plan_to_json(plan).dump(2) << "\n";
    return 0;
  }
  PrimalSolution prim = recover_primal(plan, sites);
  out << format_vector(prim.x.coords()) << "\n";
  return 0;
}

int cmd_fw_set(const std::string& input, bool header, bool facet_lp,
               int threads, std::ostream& out) {
  auto in = open_or_throw(input);
  SiteMatrix sites = read_site_matrix(in, header);
  Polytrope poly =
      facet_lp ? fw_polytrope_by_lp(sites, threads) : fw_polytrope(sites);
  out << polytrope_to_json(poly).dump(2) << "\n";
  return 0;
}

int cmd_validate(const std::string& input, std::ostream& out) {
  auto in = open_or_throw(input);
  std::vector<PhyloTree> trees = read_newick_file(in);
  bool all_good = true;
  for (size_t k = 0; k < trees.size(); ++k) {
    if (trees[k].is_equidistant()) {
      out << "tree " << (k + 1) << ": ok, " << trees[k].leaf_count()
          << " taxa, height " << format_rational(trees[k].root_height())
          << "\n";
    } else {
      all_good = false;
      out << "tree " << (k + 1) << ": not equidistant; shallow leaves:";
      for (const std::string& leaf : trees[k].shallow_leaves())
        out << " " << leaf;
      out << "\n";
    }
  }
  return all_good ? 0 : 1;
}

int cmd_dist(const std::string& input, bool as_trees, std::ostream& out) {
  std::vector<std::vector<Rat>> vectors;
  auto in = open_or_throw(input);
  if (as_trees) {
    std::vector<PhyloTree> trees = read_newick_file(in);
    if (trees.size() != 2)
      throw std::invalid_argument("dist expects exactly two trees");
    if (trees[0].taxa() != trees[1].taxa())
      throw std::invalid_argument("taxa sets differ");
    vectors.push_back(tree_to_ultrametric(trees[0]).d);
    vectors.push_back(tree_to_ultrametric(trees[1]).d);
  } else {
    SiteMatrix sites = read_site_matrix(in);
    if (sites.rows() != 2)
      throw std::invalid_argument("dist expects exactly two points");
    vectors.push_back(sites.row(0));
    vectors.push_back(sites.row(1));
  }
  TropicalPoint a(vectors[0]), b(vectors[1]);
  out << "d_asym(1,2) = " << format_rational(d_asym(a, b)) << "\n";
  out << "d_asym(2,1) = " << format_rational(d_asym(b, a)) << "\n";
  out << "d_sym(1,2) = " << format_rational(d_sym(a, b)) << "\n";
  return 0;
}

int cmd_triplets(const std::string& input, std::ostream& out) {
  auto in = open_or_throw(input);
  std::vector<PhyloTree> trees = read_newick_file(in);
  for (size_t k = 0; k < trees.size(); ++k) {
    if (trees.size() > 1) out << "# tree " << (k + 1) << "\n";
    Ultrametric u = tree_to_ultrametric(trees[k]);
    for (const RootedTriplet& t : rooted_triplets(u))
      out << triplet_label(t, u.taxa) << "\n";
  }
  return 0;
}

int cmd_pmax(const std::string& input, const std::string& normalize_mode,
             bool adjust, std::ostream& out) {
  auto in = open_or_throw(input);
  std::vector<PhyloTree> trees = read_newick_file(in);
  std::vector<Ultrametric> inputs;
  for (const PhyloTree& t : trees) {
    if (!t.is_equidistant() && !adjust)
      throw std::invalid_argument("input tree is not equidistant");
    inputs.push_back(
        tree_to_ultrametric(t.is_equidistant() ? t : make_equidistant(t)));
  }

  if (normalize_mode == "raw") {
    Ultrametric result = pointwise_max_consensus(inputs);
    out << emit_newick(ultrametric_to_tree(result)) << "\n";
    return 0;
  }
  if (normalize_mode != "H")
    throw std::invalid_argument("--normalize accepts 'raw' or 'H'");

  // Sum-zero representatives; their pointwise maximum is the center of the
  // smallest enclosing ball. Lifted for display like the consensus output.
  const size_t dims = inputs[0].d.size();
  std::vector<Rat> best;
  Rat tallest = inputs[0].d[0];
  for (const Ultrametric& u : inputs)
    for (const Rat& v : u.d) tallest = std::max(tallest, v);
  for (const Ultrametric& u : inputs) {
    std::vector<Rat> w = TropicalPoint(u.d).coords();
    if (best.empty()) {
      best = w;
      continue;
    }
    for (size_t c = 0; c < dims; ++c) best[c] = std::max(best[c], w[c]);
  }
  Rat top = *std::max_element(best.begin(), best.end());
  Rat bottom = *std::min_element(best.begin(), best.end());
  Rat shift = std::max(Rat(tallest - top), Rat(-bottom));
  for (Rat& v : best) v += shift;
  Ultrametric result{inputs[0].taxa, std::move(best)};
  if (!is_ultrametric(result.d, result.taxon_count()))
    throw std::logic_error("pointwise maximum left the tree space");
  out << emit_newick(ultrametric_to_tree(result)) << "\n";
  return 0;
}

int cmd_bench(const std::vector<int>& staircase, const std::vector<int>& scan,
              std::uint64_t seed, std::ostream& out, std::ostream& err) {
  if (staircase.empty() == scan.empty()) {
    err << "bench: pass exactly one of --staircase M N or --gcd-scan "
           "N_TAXA M_MAX\n";
    return 2;
  }
  if (!staircase.empty()) {
    int m = staircase[0], n = staircase[1];
    if (m < 1 || n < 2) throw std::invalid_argument("need m >= 1 and n >= 2");
    Polytrope poly = fw_polytrope(staircase_matrix(m, n));
    out << "m=" << m << " n=" << n << " gcd=" << gcd_ll(m, n)
        << " dimension=" << dimension(poly)
        << " tropical_vertices=" << tropical_vertices(poly).size()
        << " p_star=" << format_rational(poly.p_star) << "\n";
    return 0;
  }

  int n_taxa = scan[0], m_max = scan[1];
  if (n_taxa < 3 || m_max < 1)
    throw std::invalid_argument("need n_taxa >= 3 and m_max >= 1");
  std::vector<std::string> taxa = default_taxa(n_taxa);
  out << "m,dim,vertices,micros\n";
  for (int m = 1; m <= m_max; ++m) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(m));
    std::vector<PhyloTree> trees;
    for (int i = 0; i < m; ++i)
      trees.push_back(random_equidistant_tree(rng, taxa));
    auto start = std::chrono::steady_clock::now();
    ConsensusResult result = tropical_median(trees);
    auto stop = std::chrono::steady_clock::now();
    auto micros =
        std::chrono::duration_cast<std::chrono::microseconds>(stop - start);
    out << m << "," << result.fw_dimension << ","
        << result.tropical_vertex_count << "," << micros.count() << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Tropical median consensus trees via transportation"};
  app.require_subcommand(1);

  // consensus
  std::string c_input, c_weights, c_csv;
  bool c_adjust = false, c_json = false;
  auto* consensus = app.add_subcommand(
      "consensus", "Tropical median consensus tree of equidistant trees");
  consensus->add_option("input", c_input, "Newick file, one tree per line")
      ->required();
  consensus->add_option("--weights", c_weights,
                        "file with one positive integer weight per tree");
  consensus->add_flag("--adjust-equidistant", c_adjust,
                      "stretch leaf edges of non-equidistant inputs");
  consensus->add_flag("--json", c_json, "emit the full result as JSON");
  consensus->add_option("--ultrametric-csv", c_csv,
                        "also write the consensus distance vector to a file");

  // fw-point
  std::string p_input;
  bool p_header = false, p_dump = false;
  auto* fw_point_cmd = app.add_subcommand(
      "fw-point", "One Fermat-Weber point of a site matrix");
  fw_point_cmd->add_option("input", p_input, "CSV/TSV site matrix")
      ->required();
  fw_point_cmd->add_flag("--header", p_header, "skip the first line");
  fw_point_cmd->add_flag("--dump-plan", p_dump,
                         "emit the optimal transport plan as JSON instead");

  // fw-set
  std::string s_input;
  bool s_header = false, s_lp = false;
  int s_threads = 1;
  auto* fw_set_cmd = app.add_subcommand(
      "fw-set", "Facets, tropical vertices and dimension of the "
                "Fermat-Weber set");
  fw_set_cmd->add_option("input", s_input, "CSV/TSV site matrix")->required();
  fw_set_cmd->add_flag("--header", s_header, "skip the first line");
  fw_set_cmd->add_flag("--facet-lp", s_lp,
                       "solve one LP per facet instead of the "
                       "complementary-slackness reduction");
  fw_set_cmd->add_option("--threads", s_threads,
                         "worker threads for the facet LPs");

  // validate
  std::string v_input;
  auto* validate =
      app.add_subcommand("validate", "Check trees for equidistance");
  validate->add_option("input", v_input, "Newick file")->required();

  // dist
  std::string d_input;
  bool d_trees = false;
  auto* dist = app.add_subcommand(
      "dist", "Tropical distances between two points or two trees");
  dist->add_option("input", d_input, "CSV with two rows, or Newick file")
      ->required();
  dist->add_flag("--trees", d_trees, "input holds two equidistant trees");

  // triplets
  std::string t_input;
  auto* triplets =
      app.add_subcommand("triplets", "Rooted triplets of each input tree");
  triplets->add_option("input", t_input, "Newick file")->required();

  // pmax
  std::string x_input, x_normalize = "raw";
  bool x_adjust = false;
  auto* pmax = app.add_subcommand(
      "pmax", "Pointwise-maximum consensus tree (outlier-sensitive baseline)");
  pmax->add_option("input", x_input, "Newick file")->required();
  pmax->add_option("--normalize", x_normalize,
                   "'raw' (default) or 'H' for sum-zero representatives");
  pmax->add_flag("--adjust-equidistant", x_adjust,
                 "stretch leaf edges of non-equidistant inputs");

  // bench
  std::vector<int> b_staircase, b_scan;
  std::uint64_t b_seed = 12345;
  auto* bench = app.add_subcommand("bench", "Built-in workloads");
  bench->add_option("--staircase", b_staircase,
                    "dimension of the staircase family instance M N")
      ->expected(2);
  bench->add_option("--gcd-scan", b_scan,
                    "CSV scan over tree counts: N_TAXA M_MAX")
      ->expected(2);
  bench->add_option("--seed", b_seed, "random seed");

  try {
    // CLI11 consumes the vector back to front
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (consensus->parsed())
      return cmd_consensus(c_input, c_weights, c_adjust, c_json, c_csv, out);
    if (fw_point_cmd->parsed())
      return cmd_fw_point(p_input, p_header, p_dump, out);
    if (fw_set_cmd->parsed())
      return cmd_fw_set(s_input, s_header, s_lp, s_threads, out);
    if (validate->parsed()) return cmd_validate(v_input, out);
    if (dist->parsed()) return cmd_dist(d_input, d_trees, out);
    if (triplets->parsed()) return cmd_triplets(t_input, out);
    if (pmax->parsed()) return cmd_pmax(x_input, x_normalize, x_adjust, out);
    if (bench->parsed()) return cmd_bench(b_staircase, b_scan, b_seed, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace tropmed
