// deltakit: corpus -> frequency matrix -> distances -> evaluation / interpretation.

#include "deltakit/corpus.hpp"
#include "deltakit/csv.hpp"
#include "deltakit/decompose.hpp"
#include "deltakit/evaluate.hpp"
#include "deltakit/io.hpp"
#include "deltakit/pipeline.hpp"
#include "deltakit/robustness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using deltakit::io::Json;

namespace {

std::vector<std::string> split_list(std::string const &text)
{
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto const b = item.find_first_not_of(" \t");
    auto const e = item.find_last_not_of(" \t");
    if (b != std::string::npos) { out.push_back(item.substr(b, e - b + 1)); }
  }
  return out;
}

template <typename T, typename F> std::vector<T> parse_list(std::string const &text, F &&convert, char const *what)
{
  std::vector<T> out;
  for (auto const &item : split_list(text)) { out.push_back(convert(item)); }
  if (out.empty()) { throw deltakit::Error(std::string(what) + " must not be empty"); }
  return out;
}

double parse_alpha(std::string const &text)
{
  // accept fractions like 1/12
  auto const slash = text.find('/');
  if (slash == std::string::npos) { return deltakit::csv::parse_real(text); }
  double const den = deltakit::csv::parse_real(text.substr(slash + 1));
  if (den == 0) { throw deltakit::Error("zero denominator in '" + text + "'"); }
  return deltakit::csv::parse_real(text.substr(0, slash)) / den;
}

std::string out_path(std::string const &dir, std::string const &name) { return (fs::path(dir) / name).string(); }

template <typename Writer> void write_csv(std::string const &path, Writer &&writer)
{
  std::ostringstream out;
  writer(out);
  deltakit::io::write_text(path, out.str());
}

/// Options shared by every stage that standardizes a frequency matrix.
struct PipelineOptions
{
  std::string frequencies;
  long long mfw = 0;
  std::string zscore = "auto";
  int ddof = 1;
  double epsilon = 1e-10;
  std::string metric = "burrows";
  double pi1 = 0.5;
  std::string alpha = "1";
  std::string rtd_normalizer = "literal";
  bool normalize_by_n = true;

  void attach(CLI::App *cmd, std::vector<CLI::Option *> &required, bool with_metric = true)
  {
    required.push_back(cmd->add_option("--frequencies", frequencies, "frequency matrix CSV from `ingest`"));
    cmd->add_option("--mfw", mfw, "most frequent words kept (0 = all)");
    cmd->add_option("--zscore", zscore, "centred | uncentred | auto (uncentred for jsd, else centred)");
    cmd->add_option("--ddof", ddof, "0 = population, 1 = sample deviation");
    cmd->add_option("--epsilon", epsilon, "smoothing added before normalizing to probabilities");
    if (with_metric) { cmd->add_option("--metric", metric, "burrows | quadratic | cosine | jsd | rtd"); }
    cmd->add_option("--pi1", pi1, "jsd mixture weight of the first document");
    cmd->add_option("--alpha", alpha, "rtd alpha (fractions like 1/3 allowed)");
    cmd->add_option("--rtd-normalizer", rtd_normalizer, "literal (N1 - N2/2) | exclusive (N1 + N2/2)");
    cmd->add_option("--normalize-by-n", normalize_by_n, "divide burrows delta by the token count");
  }

  deltakit::MetricSpec metric_spec() const
  {
    deltakit::MetricSpec m;
    m.kind = deltakit::parse_metric_kind(metric);
    m.pi1 = pi1;
    m.alpha = parse_alpha(alpha);
    m.normalize_by_n = normalize_by_n;
    m.rtd_normalizer = deltakit::parse_rtd_normalizer(rtd_normalizer);
    return m;
  }

  deltakit::PipelineConfig config() const
  {
    deltakit::PipelineConfig c;
    c.metric = metric_spec();
    c.mfw = mfw;
    c.zmode = zscore == "auto" ? (c.metric.kind == deltakit::MetricKind::Jsd ? deltakit::ZMode::Uncentred : deltakit::ZMode::Centred)
                               : deltakit::parse_zmode(zscore);
    c.ddof = ddof;
    c.epsilon = epsilon;
    c.validate();
    return c;
  }
};

Json manifest(std::string const &command, CLI::App const *cmd)
{
  Json args;
  for (auto const *opt : cmd->get_options()) {
    auto const name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h" || name == "--threads") { continue; }
    auto const key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
    auto const results = opt->results();
    if (results.empty()) {
      args[key] = opt->get_default_str();
    } else if (results.size() == 1) {
      args[key] = results.front();
    } else {
      args[key] = results;
    }
  }
  Json j;
  j["command"] = command;
  j["arguments"] = args;
  return j;
}

/// Applies values from a JSON config file to options not given on the command line.
void apply_config(CLI::App *cmd, std::string const &path)
{
  std::ifstream in(path);
  if (!in) { throw deltakit::Error("cannot open config '" + path + "'"); }
  Json const config = Json::parse(in);
  if (!config.is_object()) { throw deltakit::Error("config '" + path + "' must be a JSON object"); }
  std::set<std::string> known;
  for (auto *opt : cmd->get_options()) {
    if (opt->get_lnames().empty()) { continue; }
    auto const key = opt->get_lnames().front();
    known.insert(key);
    if (opt->count() > 0 || !config.contains(key)) { continue; }
    auto const &value = config.at(key);
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_array()) {
      for (auto const &v : value) { text += (text.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump()); }
    } else {
      text = value.dump();
    }
    opt->add_result(text);
    opt->run_callback();
  }
  for (auto const &[key, value] : config.items()) {
    if (!known.count(key)) { throw deltakit::Error("config '" + path + "': unknown option '" + key + "'"); }
  }
}

deltakit::Labels authors_for(deltakit::FrequencyMatrix const &freq, std::string const &documents)
{
  return deltakit::authors_of(freq, deltakit::read_manifest(documents));
}

deltakit::Labels authors_for_ids(std::vector<std::string> const &ids, std::string const &documents)
{
  deltakit::FrequencyMatrix stub;
  stub.docs = ids;
  return deltakit::authors_of(stub, deltakit::read_manifest(documents));
}

std::pair<std::string, std::string> parse_pair(std::string const &text)
{
  auto const items = split_list(text);
  if (items.size() != 2) { throw deltakit::Error("--authors needs exactly two comma-separated names"); }
  return {items[0], items[1]};
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"deltakit: Delta-family stylometric distances, decompositions and evaluation"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::vector<CLI::Option *> required; // checked after --config is merged
  unsigned threads = 0;
  std::string out_dir = ".";
  std::string config_path;

  auto const common = [&](CLI::App *cmd) {
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--threads", threads, "worker threads (0 = all cores); outputs do not depend on it");
    cmd->add_option("--config", config_path, "JSON file with option values; command-line flags win");
  };

  // ingest
  auto *ingest = app.add_subcommand("ingest", "tokenize a manifest's documents into a frequency matrix");
  std::string manifest_path;
  long long vocab_cap = 20000;
  std::string scripts = "latin,cyrillic";
  int ngram_min = 1, ngram_max = 1;
  required.push_back(ingest->add_option("--manifest", manifest_path, "CSV with id,author,title,year,path"));
  ingest->add_option("--vocab-cap", vocab_cap, "most frequent types kept");
  ingest->add_option("--scripts", scripts, "allowed alphabets: latin,cyrillic");
  ingest->add_option("--ngram-min", ngram_min, "smallest word n-gram");
  ingest->add_option("--ngram-max", ngram_max, "largest word n-gram");
  common(ingest);

  // distmat
  auto *distmat = app.add_subcommand("distmat", "pairwise distance matrix");
  PipelineOptions dist_opts;
  bool emit_representation = false;
  dist_opts.attach(distmat, required);
  distmat->add_flag("--emit-representation", emit_representation, "also write the z / probability / rank matrix");
  common(distmat);

  // cluster
  auto *cluster = app.add_subcommand("cluster", "PAM clustering of a distance matrix, scored by ARI");
  std::string distances_path, documents_path;
  long long k_clusters = 0;
  required.push_back(cluster->add_option("--distances", distances_path, "distance CSV from `distmat`"));
  required.push_back(cluster->add_option("--documents", documents_path, "document manifest (for author labels)"));
  cluster->add_option("--k", k_clusters, "cluster count (0 = number of authors)");
  common(cluster);

  // attribute
  auto *attribute = app.add_subcommand("attribute", "leave-one-out nearest-neighbour attribution");
  std::string singletons = "error";
  required.push_back(attribute->add_option("--distances", distances_path, "distance CSV from `distmat`"));
  required.push_back(attribute->add_option("--documents", documents_path, "document manifest (for author labels)"));
  attribute->add_option("--singletons", singletons, "error | exclude: scoring of sole-work authors");
  common(attribute);

  // contributions
  auto *contrib = app.add_subcommand("contributions", "token contributions to the distance between two author profiles");
  PipelineOptions contrib_opts;
  std::string author_pair;
  std::size_t top = 30;
  bool restrict_pair = false;
  contrib_opts.attach(contrib, required);
  required.push_back(contrib->add_option("--documents", documents_path, "document manifest (for author labels)"));
  required.push_back(contrib->add_option("--authors", author_pair, "two author labels, comma-separated"));
  contrib->add_option("--top", top, "rows in the top-K table");
  contrib->add_flag("--restrict-to-pair", restrict_pair, "standardize on the two authors' documents only");
  common(contrib);

  // sweep
  auto *sweep_cmd = app.add_subcommand("sweep", "clustering / attribution scores over mfw, metric, z-mode and alpha grids");
  PipelineOptions sweep_opts;
  std::string task = "cluster", mfw_grid, metric_grid = "burrows,quadratic,cosine,jsd,rtd",
              zscore_grid = "centred,uncentred", alpha_grid = "1";
  sweep_opts.attach(sweep_cmd, required, false);
  required.push_back(sweep_cmd->add_option("--documents", documents_path, "document manifest (for author labels)"));
  sweep_cmd->add_option("--task", task, "cluster | attribute");
  required.push_back(sweep_cmd->add_option("--mfw-grid", mfw_grid, "comma-separated mfw values"));
  sweep_cmd->add_option("--metrics", metric_grid, "comma-separated metrics");
  sweep_cmd->add_option("--zscores", zscore_grid, "comma-separated z-modes");
  sweep_cmd->add_option("--alpha-grid", alpha_grid, "comma-separated rtd alphas (fractions allowed)");
  sweep_cmd->add_option("--singletons", singletons, "error | exclude (attribute task)");
  common(sweep_cmd);

  // robustness
  auto *robust = app.add_subcommand("robustness", "stability of top contributors and token-removal check");
  PipelineOptions robust_opts;
  std::string experiment = "mfw", mfw_list, k_list = "10,50,100";
  long long base_mfw = 0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  robust_opts.attach(robust, required);
  required.push_back(robust->add_option("--documents", documents_path, "document manifest (for author labels)"));
  required.push_back(robust->add_option("--authors", author_pair, "two author labels, comma-separated"));
  robust->add_option("--experiment", experiment, "mfw | bootstrap | removal");
  robust->add_option("--top", top, "top-K size");
  robust->add_option("--base-mfw", base_mfw, "reference mfw (mfw experiment)");
  robust->add_option("--mfw-list", mfw_list, "perturbed mfw values (mfw experiment)");
  robust->add_option("--iterations", iterations, "bootstrap iterations");
  robust->add_option("--seed", seed, "bootstrap seed");
  robust->add_option("--k-list", k_list, "removal sizes, strictly increasing");
  robust->add_flag("--restrict-to-pair", restrict_pair, "standardize on the two authors' documents only");
  common(robust);

  CLI11_PARSE(app, argc, argv);

  CLI::App *cmd = app.get_subcommands().front();
  std::string const name = cmd->get_name();
  try {
    if (!config_path.empty()) { apply_config(cmd, config_path); }
    for (auto const *opt : cmd->get_options()) {
      bool const needed = std::find(required.begin(), required.end(), opt) != required.end();
      if (needed && opt->count() == 0) { throw deltakit::Error(opt->get_name() + " is required"); }
    }
    Json meta = manifest(name, cmd);

    if (name == "ingest") {
      if (ngram_min < 1 || ngram_min > ngram_max) { throw deltakit::Error("need 1 <= --ngram-min <= --ngram-max"); }
      auto const records = deltakit::read_manifest(manifest_path);
      deltakit::TokenizerOptions tok{deltakit::parse_scripts(scripts), ngram_min, ngram_max};
      auto const freq = deltakit::build_frequency_matrix(records, vocab_cap, tok, threads);
      write_csv(out_path(out_dir, "frequencies.csv"), [&](std::ostream &o) { deltakit::write_frequency_csv(o, freq); });
      write_csv(out_path(out_dir, "documents.csv"), [&](std::ostream &o) { deltakit::write_manifest(o, records); });
      meta["documents"] = freq.docs.size();
      meta["vocabulary"] = freq.vocab.size();
      deltakit::io::write_json(out_path(out_dir, "ingest.json"), meta);
    } else if (name == "distmat") {
      auto const config = dist_opts.config();
      auto const freq = deltakit::read_frequency_csv(dist_opts.frequencies);
      auto const z = deltakit::standardize(freq, config);
      auto const rep = deltakit::represent(z, config);
      auto const d = deltakit::pairwise_matrix(rep, config.metric, threads);
      write_csv(out_path(out_dir, "distances.csv"), [&](std::ostream &o) { deltakit::write_distance_csv(o, d); });
      if (emit_representation) {
        write_csv(out_path(out_dir, "representation.csv"), [&](std::ostream &o) {
          if (auto const *p = std::get_if<deltakit::ProbabilityMatrix>(&rep)) {
            deltakit::write_real_csv(o, p->docs, p->vocab, p->rho);
          } else if (auto const *r = std::get_if<deltakit::RankMatrix>(&rep)) {
            deltakit::write_real_csv(o, r->docs, r->vocab, r->ranks);
          } else {
            deltakit::write_real_csv(o, z.docs, z.vocab, z.values);
          }
        });
      }
      meta["pipeline"] = deltakit::io::to_json(config);
      meta["kind"] = deltakit::to_string(config.metric.kind);
      meta["pi1"] = config.metric.pi1;
      meta["alpha"] = config.metric.alpha;
      meta["normalizer"] = deltakit::to_string(config.metric.rtd_normalizer);
      meta["mfw"] = config.mfw;
      meta["zscore"] = deltakit::to_string(config.zmode);
      meta["epsilon"] = config.epsilon;
      meta["ddof"] = config.ddof;
      meta["retained_tokens"] = z.vocab.size();
      deltakit::io::write_json(out_path(out_dir, "distances.json"), meta);
    } else if (name == "cluster") {
      auto const d = deltakit::read_distance_csv(distances_path);
      auto const authors = authors_for_ids(d.docs, documents_path);
      auto const k = k_clusters > 0 ? k_clusters
                                    : static_cast<long long>(std::set<std::string>(authors.begin(), authors.end()).size());
      auto const result = deltakit::pam_cluster(d, k);
      std::vector<std::string> cluster_labels;
      for (auto l : result.labels) { cluster_labels.push_back(std::to_string(l)); }
      double const ari = deltakit::adjusted_rand_index(cluster_labels, authors);
      write_csv(out_path(out_dir, "clusters.csv"), [&](std::ostream &o) { deltakit::io::write_clusters_csv(o, d.docs, authors, result); });
      meta["k"] = k;
      meta["medoids"] = result.medoid_ids;
      meta["total_cost"] = result.total_cost;
      meta["adjusted_rand_index"] = ari;
      deltakit::io::write_json(out_path(out_dir, "cluster.json"), meta);
      std::cout << "ARI " << deltakit::csv::format_real(ari) << '\n';
    } else if (name == "attribute") {
      auto const d = deltakit::read_distance_csv(distances_path);
      auto const authors = authors_for_ids(d.docs, documents_path);
      if (singletons != "error" && singletons != "exclude") { throw deltakit::Error("--singletons must be error or exclude"); }
      auto const result = deltakit::loocv_nearest_neighbor(d, authors);
      auto const policy = singletons == "error" ? deltakit::SingletonPolicy::CountAsError : deltakit::SingletonPolicy::Exclude;
      double const score = deltakit::score_attribution(result, policy);
      write_csv(out_path(out_dir, "attribution.csv"), [&](std::ostream &o) { deltakit::io::write_attribution_csv(o, d.docs, result); });
      meta["balanced_accuracy"] = score;
      deltakit::io::write_json(out_path(out_dir, "attribute.json"), meta);
      std::cout << "balanced accuracy " << deltakit::csv::format_real(score) << '\n';
    } else if (name == "contributions") {
      if (top < 1) { throw deltakit::Error("--top must be >= 1"); }
      auto const config = contrib_opts.config();
      auto const [a1, a2] = parse_pair(author_pair);
      auto const freq = deltakit::read_frequency_csv(contrib_opts.frequencies);
      auto const authors = authors_for(freq, documents_path);
      deltakit::PairSetup setup{a1, a2, config, restrict_pair};
      auto const table = deltakit::pair_contributions(freq, authors, setup);
      double total = 0;
      for (auto const &row : table.rows) { total += row.delta; }
      if (config.metric.kind == deltakit::MetricKind::Cosine) { total += 1; }
      auto const best = deltakit::top_k(table, top);
      write_csv(out_path(out_dir, "contributions.csv"), [&](std::ostream &o) { deltakit::write_contributions_csv(o, best); });
      write_csv(out_path(out_dir, "contributions_all.csv"), [&](std::ostream &o) { deltakit::write_contributions_csv(o, table); });
      deltakit::io::write_json(out_path(out_dir, "wordshift.json"), deltakit::io::wordshift_json(best, total));
      meta["pipeline"] = deltakit::io::to_json(config);
      meta["total"] = total;
      meta["rows"] = best.rows.size();
      deltakit::io::write_json(out_path(out_dir, "contributions.json"), meta);
    } else if (name == "sweep") {
      auto const freq = deltakit::read_frequency_csv(sweep_opts.frequencies);
      auto const authors = authors_for(freq, documents_path);
      deltakit::SweepConfig sc;
      sc.task = deltakit::parse_task(task);
      sc.mfw_grid = parse_list<deltakit::Index>(mfw_grid, [](auto const &s) { return deltakit::csv::parse_integer(s); }, "--mfw-grid");
      sc.metrics = parse_list<deltakit::MetricKind>(metric_grid, deltakit::parse_metric_kind, "--metrics");
      sc.zmodes = parse_list<deltakit::ZMode>(zscore_grid, deltakit::parse_zmode, "--zscores");
      sc.alpha_grid = parse_list<double>(alpha_grid, parse_alpha, "--alpha-grid");
      sc.ddof = sweep_opts.ddof;
      sc.epsilon = sweep_opts.epsilon;
      sc.pi1 = sweep_opts.pi1;
      sc.normalize_by_n = sweep_opts.normalize_by_n;
      sc.rtd_normalizer = deltakit::parse_rtd_normalizer(sweep_opts.rtd_normalizer);
      if (singletons != "error" && singletons != "exclude") { throw deltakit::Error("--singletons must be error or exclude"); }
      sc.singletons = singletons == "error" ? deltakit::SingletonPolicy::CountAsError : deltakit::SingletonPolicy::Exclude;
      for (double a : sc.alpha_grid) {
        if (!(a > 0)) { throw deltakit::Error("alpha values must be > 0"); }
      }
      for (auto m : sc.mfw_grid) {
        if (m < 1 || m > freq.vocab.size()) { throw deltakit::Error("mfw " + std::to_string(m) + " outside the vocabulary"); }
      }
      auto const report = deltakit::sweep(freq, authors, sc, threads);
      write_csv(out_path(out_dir, "sweep.csv"), [&](std::ostream &o) { deltakit::io::write_sweep_csv(o, report); });
      meta["sweep"] = deltakit::io::to_json(sc);
      deltakit::io::write_json(out_path(out_dir, "sweep.json"), meta);
    } else if (name == "robustness") {
      if (top < 1) { throw deltakit::Error("--top must be >= 1"); }
      auto const config = robust_opts.config();
      auto const [a1, a2] = parse_pair(author_pair);
      auto const freq = deltakit::read_frequency_csv(robust_opts.frequencies);
      auto const authors = authors_for(freq, documents_path);
      deltakit::PairSetup setup{a1, a2, config, restrict_pair};
      meta["pipeline"] = deltakit::io::to_json(config);
      if (experiment == "mfw") {
        if (base_mfw < 1 || mfw_list.empty()) { throw deltakit::Error("mfw experiment needs --base-mfw and --mfw-list"); }
        auto const perturbed = parse_list<deltakit::Index>(mfw_list, [](auto const &s) { return deltakit::csv::parse_integer(s); }, "--mfw-list");
        auto const report = deltakit::mfw_stability(freq, authors, setup, base_mfw, perturbed, top);
        write_csv(out_path(out_dir, "robustness_mfw.csv"), [&](std::ostream &o) { deltakit::io::write_mfw_stability_csv(o, report); });
      } else if (experiment == "bootstrap") {
        if (iterations < 1) { throw deltakit::Error("bootstrap needs --iterations >= 1"); }
        auto const report = deltakit::bootstrap_stability(freq, authors, setup, top, iterations, seed, threads);
        write_csv(out_path(out_dir, "robustness_bootstrap.csv"), [&](std::ostream &o) { deltakit::io::write_bootstrap_csv(o, report); });
        write_csv(out_path(out_dir, "robustness_bootstrap_iterations.csv"),
                  [&](std::ostream &o) { deltakit::io::write_bootstrap_iterations_csv(o, report); });
        meta["mean_jaccard"] = report.mean;
        meta["std_dev"] = report.std_dev;
      } else if (experiment == "removal") {
        auto const ks = parse_list<std::size_t>(k_list, [](auto const &s) {
          auto const v = deltakit::csv::parse_integer(s);
          if (v < 1) { throw deltakit::Error("K values must be >= 1"); }
          return static_cast<std::size_t>(v);
        }, "--k-list");
        auto sliced = config.mfw > 0 ? deltakit::select_mfw(freq, config.mfw) : freq;
        deltakit::Labels sub_authors = authors;
        if (restrict_pair) {
          std::vector<deltakit::Index> keep;
          for (std::size_t i = 0; i < authors.size(); ++i) {
            if (authors[i] == a1 || authors[i] == a2) { keep.push_back(static_cast<deltakit::Index>(i)); }
          }
          sliced = deltakit::select_documents(sliced, keep);
          sub_authors.clear();
          for (auto i : keep) { sub_authors.push_back(authors[static_cast<std::size_t>(i)]); }
        }
        auto pc = config;
        pc.mfw = 0;
        auto const z = deltakit::standardize(sliced, pc);
        auto const p1 = deltakit::author_profile(z, sub_authors, a1);
        auto const p2 = deltakit::author_profile(z, sub_authors, a2);
        auto const report = deltakit::removal_experiment(p1, p2, z.vocab, config.metric, ks, config.epsilon);
        write_csv(out_path(out_dir, "robustness_removal.csv"), [&](std::ostream &o) { deltakit::io::write_removal_csv(o, report); });
        meta["monotone"] = report.monotone();
        if (!report.monotone()) { std::cerr << "warning: removal did not reduce the distance monotonically\n"; }
      } else {
        throw deltakit::Error("unknown --experiment '" + experiment + "' (expected mfw, bootstrap or removal)");
      }
      deltakit::io::write_json(out_path(out_dir, "robustness.json"), meta);
    }
  } catch (std::exception const &e) {
    std::cerr << "deltakit " << name << ": error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
