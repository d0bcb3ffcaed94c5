#include "itemsynth/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "itemsynth/characteristics.hpp"
#include "itemsynth/errors.hpp"
#include "itemsynth/fidelity.hpp"
#include "itemsynth/fim.hpp"
#include "itemsynth/igm.hpp"
#include "itemsynth/parallel.hpp"
#include "itemsynth/svg.hpp"

namespace itemsynth {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot open output file: " + path.string());
  out << content;
  out.close();
  if (!out) throw Error(ErrorCode::io, "write failure: " + path.string());
}

// Manifests are written atomically so readers never see a torn file.
void write_json_atomic(const fs::path& path, const json& j) {
  const fs::path tmp = path.string() + ".tmp";
  write_text_file(tmp, j.dump(2) + "\n");
  fs::rename(tmp, path);
}

json load_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io, "invalid JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, bool* from_entropy) {
  if (seed) {
    if (from_entropy) *from_entropy = false;
    return *seed;
  }
  std::random_device rd;
  if (from_entropy) *from_entropy = true;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

json manifest_base(const std::string& command, const std::string& label,
                   const std::string& model, const std::string& dataset, std::uint64_t seed) {
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"created_utc", timestamp_utc()},
          {"command", command},
          {"label", label},
          {"model", model},
          {"dataset", dataset},
          {"config", json::object()},
          {"timings", json::object()},
          {"outputs", json::array()},
          {"warnings", json::array()},
          {"partial", false},
          {"rng", {{"family", kRngFamily}, {"version", kRngVersion}, {"seed", seed}}}};
}

bool glob_match(const char* pat, const char* str) {
  const char* star = nullptr;
  const char* backtrack = nullptr;
  while (*str) {
    if (*pat == '?' || *pat == *str) {
      ++pat;
      ++str;
    } else if (*pat == '*') {
      star = pat++;
      backtrack = str;
    } else if (star) {
      pat = star + 1;
      str = ++backtrack;
    } else {
      return false;
    }
  }
  while (*pat == '*') ++pat;
  return *pat == '\0';
}

struct ReplicaStats {
  double mean = 0.0;
  double stdev = 0.0;
};

ReplicaStats mean_stdev(const std::vector<double>& values) {
  ReplicaStats s;
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stdev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

}  // namespace

std::vector<double> parse_support_grid(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double start = 0, end = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &end, &step) != 3 || step <= 0 ||
        start > end) {
      throw Error(ErrorCode::usage, "invalid grid '" + spec + "' (want start:end:step)");
    }
    const int count = static_cast<int>(std::floor((end - start) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) out.push_back(start + i * step);
  } else {
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (token.empty()) continue;
      try {
        out.push_back(std::stod(token));
      } catch (const std::exception&) {
        throw Error(ErrorCode::usage, "invalid grid value '" + token + "'");
      }
    }
  }
  if (out.empty()) throw Error(ErrorCode::usage, "empty support grid");
  for (double v : out) {
    if (!(v > 0.0) || !(v < 1.0)) {
      throw Error(ErrorCode::usage, "grid values must lie in (0, 1)");
    }
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

void append_config_tokens(const std::string& file, std::vector<std::string>& out) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::io, "cannot open config file: " + file);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::usage,
                  file + " line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') &&
        value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty() || key == "config") {
      throw Error(ErrorCode::usage, file + " line " + std::to_string(line_no) + ": bad key");
    }
    out.push_back("--" + key + "=" + value);
  }
}

}  // namespace

std::vector<std::string> expand_config_args(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  out.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(ErrorCode::usage, "--config needs a file");
      append_config_tokens(args[++i], out);
    } else if (args[i].rfind("--config=", 0) == 0) {
      append_config_tokens(args[i].substr(9), out);
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

std::vector<fs::path> expand_glob(const std::string& pattern) {
  const fs::path p(pattern);
  const std::string file = p.filename().string();
  std::vector<fs::path> matches;
  if (file.find('*') == std::string::npos && file.find('?') == std::string::npos) {
    if (fs::exists(p)) matches.push_back(p);
    return matches;
  }
  fs::path dir = p.parent_path();
  if (dir.empty()) dir = ".";
  if (!fs::is_directory(dir)) return matches;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (glob_match(file.c_str(), name.c_str())) matches.push_back(entry.path());
  }
  std::sort(matches.begin(), matches.end());
  return matches;
}

int cmd_mine(const MineOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    const Dataset d = load_dataset_file(opts.input, {.allow_empty = opts.allow_empty});
    const FrequentItemsetSet fi = mine_frequent(d, opts.minsup);
    save_frequent_file(fi, opts.output);
    out << fi.itemsets.size() << " frequent itemsets\n";
  });
}

int cmd_learn(const LearnOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    if (opts.model != "igm" && opts.model != "lda" && opts.model != "iim") {
      throw Error(ErrorCode::usage, "unknown model '" + opts.model + "' (want igm|lda|iim)");
    }
    if (opts.model == "iim" && opts.minsup) {
      throw Error(ErrorCode::usage, "iim does not take --minsup");
    }
    if (opts.model != "iim" && !opts.minsup) {
      throw Error(ErrorCode::usage, opts.model + " requires --minsup");
    }

    const Dataset d = load_dataset_file(opts.input, {.allow_empty = opts.allow_empty});
    fs::create_directories(opts.out_dir);

    bool seed_from_entropy = false;
    const std::uint64_t seed = resolve_seed(opts.seed, &seed_from_entropy);
    if (seed_from_entropy && opts.model == "lda") {
      err << "note: seed drawn from entropy: " << seed << '\n';
    }

    std::string label = opts.label;
    if (label.empty()) {
      label = d.name() + "_" + opts.model;
      if (opts.minsup) {
        label += "_" + std::to_string(static_cast<int>(std::lround(*opts.minsup * 100)));
      }
    }

    json manifest = manifest_base("learn", label, opts.model, d.name(), seed);
    manifest["config"] = {{"input", opts.input.string()},
                          {"model", opts.model},
                          {"allow_empty", opts.allow_empty}};
    if (opts.minsup) manifest["config"]["minsup"] = *opts.minsup;
    if (opts.model == "igm") manifest["config"]["noise_universe"] = opts.noise_universe;
    if (opts.model == "lda") {
      manifest["config"]["alpha"] = opts.lda.alpha;
      manifest["config"]["beta"] = opts.lda.beta;
      manifest["config"]["iterations"] = opts.lda.iterations;
      manifest["config"]["burnin"] = opts.lda.burnin;
      manifest["config"]["samples"] = opts.lda.samples;
    }
    if (opts.model == "iim") {
      manifest["config"]["rounds"] = opts.iim.rounds;
      manifest["config"]["max_candidates_per_round"] = opts.iim.max_candidates_per_round;
      manifest["config"]["min_p"] = opts.iim.min_p;
      manifest["config"]["lambda"] = opts.iim.lambda;
    }

    json model_json;
    std::string summary;
    const auto start = std::chrono::steady_clock::now();
    try {
      if (opts.model == "igm") {
        const NoiseUniverse universe = opts.noise_universe == "full" ? NoiseUniverse::full
                                                                     : NoiseUniverse::effective;
        const IgmModel m = learn_igm(d, *opts.minsup, universe);
        model_json = igm_to_json(m);
        summary = std::to_string(m.components.size()) + " components";
      } else if (opts.model == "lda") {
        const int k = choose_k(d, *opts.minsup);
        LdaModel m = learn_lda(d, k, opts.lda, seed);
        m.minsup = *opts.minsup;
        model_json = lda_to_json(m);
        summary = "K=" + std::to_string(k);
      } else {
        const IimModel m = learn_iim(d, opts.iim);
        model_json = iim_to_json(m);
        summary = std::to_string(m.components.size()) + " components";
      }
    } catch (const std::exception& e) {
      manifest["partial"] = true;
      manifest["warnings"].push_back(std::string("learning failed: ") + e.what());
      manifest["timings"]["learn_seconds"] = seconds_since(start);
      write_json_atomic(opts.out_dir / "manifest.json", manifest);
      throw;
    }
    const double learn_seconds = seconds_since(start);

    const fs::path model_path = opts.out_dir / "model.json";
    write_text_file(model_path, model_json.dump(2) + "\n");

    manifest["timings"]["learn_seconds"] = learn_seconds;
    manifest["outputs"].push_back("model.json");
    write_json_atomic(opts.out_dir / "manifest.json", manifest);

    out << "learned " << opts.model << " model (" << summary << ") in "
        << format_number(learn_seconds) << " s -> " << model_path.string() << '\n';
  });
}

int cmd_generate(const GenerateOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    if (opts.replicas < 1) throw Error(ErrorCode::usage, "replicas must be >= 1");
    const json model_json = load_json_file(opts.model_file);
    const std::string kind = model_json.value("kind", "");
    if (kind != "igm" && kind != "lda" && kind != "iim") {
      throw Error(ErrorCode::io, "model file has unknown kind '" + kind + "'");
    }

    IgmModel igm;
    LdaModel lda;
    IimModel iim;
    std::size_t default_n = 0;
    if (kind == "igm") {
      igm = igm_from_json(model_json);
      default_n = igm.source_size;
    } else if (kind == "lda") {
      lda = lda_from_json(model_json);
      default_n = lda.doc_count();
    } else {
      iim = iim_from_json(model_json);
      default_n = iim.source_size;
    }
    const std::size_t n = opts.n > 0 ? opts.n : default_n;
    if (n < 1) throw Error(ErrorCode::usage, "dataset size must be >= 1");

    bool seed_from_entropy = false;
    const std::uint64_t seed = resolve_seed(opts.seed, &seed_from_entropy);
    if (seed_from_entropy) err << "note: seed drawn from entropy: " << seed << '\n';

    fs::create_directories(opts.out_dir);
    const std::string label = opts.label.empty() ? kind : opts.label;

    json manifest = manifest_base("generate", label, kind, model_json.value("dataset", ""), seed);
    manifest["config"] = {{"model_file", opts.model_file.string()},
                          {"n", n},
                          {"replicas", opts.replicas},
                          {"threads", opts.threads}};
    if (opts.retry_empty) manifest["config"]["retry_empty"] = *opts.retry_empty;

    const int digits = std::clamp<int>(std::to_string(opts.replicas).size(), 2, 9);
    std::vector<double> replica_seconds;
    try {
      for (int r = 1; r <= opts.replicas; ++r) {
        const std::uint64_t replica_seed = stream_seed(seed, static_cast<std::uint64_t>(r));
        const auto start = std::chrono::steady_clock::now();
        Dataset ds;
        if (kind == "igm") {
          IgmGenOptions gen;
          gen.retry_empty = opts.retry_empty.value_or(false);
          ds = generate_dataset_igm(igm, n, replica_seed, gen, opts.threads);
        } else if (kind == "lda") {
          LdaGenStats stats;
          ds = generate_dataset_lda(lda, n, replica_seed, {}, &stats, opts.threads);
          if (stats.cap_firings > 0) {
            manifest["warnings"].push_back("lda attempt cap fired " +
                                           std::to_string(stats.cap_firings) +
                                           " times in replica " + std::to_string(r));
          }
        } else {
          IimGenOptions gen;
          gen.retry_empty = opts.retry_empty.value_or(true);
          ds = generate_dataset_iim(iim, n, replica_seed, gen, opts.threads);
        }
        replica_seconds.push_back(seconds_since(start));

        char name[64];
        std::snprintf(name, sizeof(name), "replica_%0*d.dat", digits, r);
        save_dataset_file(ds, opts.out_dir / name, {.allow_empty = true});
        manifest["outputs"].push_back(name);
      }
    } catch (...) {
      // Keep whatever was produced inspectable.
      manifest["partial"] = true;
      manifest["timings"]["generate_seconds"] = replica_seconds;
      write_json_atomic(opts.out_dir / "manifest.json", manifest);
      throw;
    }

    double total = 0.0;
    for (double s : replica_seconds) total += s;
    manifest["timings"]["generate_seconds"] = replica_seconds;
    manifest["timings"]["generate_total_seconds"] = total;
    write_json_atomic(opts.out_dir / "manifest.json", manifest);

    out << "wrote " << opts.replicas << " replicas (" << n << " transactions each) to "
        << opts.out_dir.string() << '\n';
  });
}

namespace {

struct PatternEval {
  std::string name;
  FidelityReport report;
};

std::string fidelity_csv_pattern(const std::vector<PatternEval>& evals) {
  std::ostringstream csv;
  csv << "name,level,precision,recall,f1\n";
  std::vector<double> ps, rs, f1s;
  for (const auto& e : evals) {
    for (const auto& level : e.report.per_support_level) {
      csv << e.name << ',' << format_number(level.minsup) << ','
          << format_number(level.precision) << ',' << format_number(level.recall) << ','
          << format_number(level.f1);
      if (level.both_empty) csv << ",both_empty";
      csv << '\n';
    }
    csv << e.name << ",global," << format_number(e.report.precision) << ','
        << format_number(e.report.recall) << ',' << format_number(e.report.f1) << '\n';
    ps.push_back(e.report.precision);
    rs.push_back(e.report.recall);
    f1s.push_back(e.report.f1);
  }
  const auto p = mean_stdev(ps), r = mean_stdev(rs), f = mean_stdev(f1s);
  csv << "mean,global," << format_number(p.mean) << ',' << format_number(r.mean) << ','
      << format_number(f.mean) << '\n';
  csv << "stdev,global," << format_number(p.stdev) << ',' << format_number(r.stdev) << ','
      << format_number(f.stdev) << '\n';
  return csv.str();
}

json fidelity_json_group(const std::vector<PatternEval>& evals, const std::string& kind,
                         const std::vector<double>& grid) {
  json j{{"kind", kind}};
  if (!grid.empty()) j["grid"] = grid;
  json replicas = json::array();
  std::vector<double> ps, rs, f1s;
  for (const auto& e : evals) {
    json entry = fidelity_to_json(e.report);
    entry["name"] = e.name;
    replicas.push_back(entry);
    ps.push_back(e.report.precision);
    rs.push_back(e.report.recall);
    f1s.push_back(e.report.f1);
  }
  const auto p = mean_stdev(ps), r = mean_stdev(rs), f = mean_stdev(f1s);
  j["replicas"] = replicas;
  j["replica_stats"] = {{"mean", {{"precision", p.mean}, {"recall", r.mean}, {"f1", f.mean}}},
                        {"stdev", {{"precision", p.stdev}, {"recall", r.stdev}, {"f1", f.stdev}}}};
  return j;
}

}  // namespace

int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    if (opts.suite != "characteristics" && opts.suite != "patterns" && opts.suite != "privacy" &&
        opts.suite != "all") {
      throw Error(ErrorCode::usage, "unknown suite '" + opts.suite + "'");
    }
    const Dataset original = load_dataset_file(opts.original, {.allow_empty = opts.allow_empty});
    const auto replica_paths = expand_glob(opts.replica_glob);
    if (replica_paths.empty()) {
      throw Error(ErrorCode::io, "no replica files match '" + opts.replica_glob + "'");
    }
    std::vector<Dataset> replicas;
    replicas.reserve(replica_paths.size());
    for (const auto& path : replica_paths) {
      replicas.push_back(load_dataset_file(path, {.allow_empty = true}));
    }
    const std::vector<double> grid = opts.grid.empty() ? default_support_grid() : opts.grid;
    fs::create_directories(opts.out_dir);

    const std::string label = opts.label.empty() ? original.name() : opts.label;
    json manifest = manifest_base("evaluate", label, opts.model, original.name(), 0);
    manifest["config"] = {{"original", opts.original.string()},
                          {"replicas", opts.replica_glob},
                          {"suite", opts.suite},
                          {"grid", grid},
                          {"replica_count", replicas.size()}};
    const auto start = std::chrono::steady_clock::now();

    const bool want_chars = opts.suite == "characteristics" || opts.suite == "all";
    const bool want_patterns = opts.suite == "patterns" || opts.suite == "all";
    const bool want_privacy = opts.suite == "privacy" || opts.suite == "all";

    if (want_chars) {
      NamedCharacteristics rows;
      rows.emplace_back(original.name().empty() ? "original" : original.name(),
                        characteristics(original));
      std::vector<CharacteristicsVector> replica_vectors(replicas.size());
      parallel_for(replicas.size(), opts.threads,
                   [&](std::size_t i) { replica_vectors[i] = characteristics(replicas[i]); });
      for (std::size_t i = 0; i < replicas.size(); ++i) {
        rows.emplace_back(replicas[i].name(), replica_vectors[i]);
      }
      rows.emplace_back("mean", aggregate(replica_vectors));
      write_text_file(opts.out_dir / "characteristics.csv", characteristics_csv(rows));
      write_text_file(opts.out_dir / "characteristics.json",
                      characteristics_to_json(rows).dump(2) + "\n");
      manifest["outputs"].push_back("characteristics.csv");
      manifest["outputs"].push_back("characteristics.json");
      out << "characteristics: " << replicas.size() << " replicas evaluated\n";
    }

    if (want_patterns) {
      std::vector<PatternEval> evals(replicas.size());
      parallel_for(replicas.size(), opts.threads, [&](std::size_t i) {
        evals[i] = {replicas[i].name(), pattern_fidelity(original, replicas[i], grid)};
      });
      write_text_file(opts.out_dir / "pattern_fidelity.csv", fidelity_csv_pattern(evals));
      write_text_file(opts.out_dir / "pattern_fidelity.json",
                      fidelity_json_group(evals, "pattern", grid).dump(2) + "\n");
      manifest["outputs"].push_back("pattern_fidelity.csv");
      manifest["outputs"].push_back("pattern_fidelity.json");
      std::vector<double> f1s;
      for (const auto& e : evals) f1s.push_back(e.report.f1);
      const auto f = mean_stdev(f1s);
      out << "patterns: mean f1 " << format_number(f.mean) << " (stdev " << format_number(f.stdev)
          << ") over " << replicas.size() << " replicas\n";
    }

    if (want_privacy) {
      std::vector<PatternEval> evals(replicas.size());
      parallel_for(replicas.size(), opts.threads, [&](std::size_t i) {
        evals[i] = {replicas[i].name(), privacy_score(original, replicas[i])};
      });
      std::ostringstream csv;
      csv << "name,precision,recall,f1\n";
      std::vector<double> f1s;
      for (const auto& e : evals) {
        csv << e.name << ',' << format_number(e.report.precision) << ','
            << format_number(e.report.recall) << ',' << format_number(e.report.f1) << '\n';
        f1s.push_back(e.report.f1);
      }
      const auto f = mean_stdev(f1s);
      csv << "mean,,," << format_number(f.mean) << '\n';
      csv << "stdev,,," << format_number(f.stdev) << '\n';
      write_text_file(opts.out_dir / "privacy.csv", csv.str());
      write_text_file(opts.out_dir / "privacy.json",
                      fidelity_json_group(evals, "privacy", {}).dump(2) + "\n");
      manifest["outputs"].push_back("privacy.csv");
      manifest["outputs"].push_back("privacy.json");
      out << "privacy: mean f1 " << format_number(f.mean) << " (high f1 = low privacy)\n";
    }

    manifest["timings"]["evaluate_seconds"] = seconds_since(start);
    write_json_atomic(opts.out_dir / "manifest.json", manifest);
  });
}

namespace {

struct EvalRun {
  std::string label;
  std::string group;  // model tag when present, else label
  fs::path dir;
  json manifest;

  bool has_output(const std::string& name) const {
    for (const auto& o : manifest.at("outputs")) {
      if (o.get<std::string>() == name) return true;
    }
    return false;
  }
};

std::string csv_cell(double v) { return format_number(v); }

}  // namespace

int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&] {
    if (opts.manifests.empty()) throw Error(ErrorCode::usage, "need at least one manifest");
    if (opts.format != "csv" && opts.format != "json") {
      throw Error(ErrorCode::usage, "unknown format '" + opts.format + "'");
    }
    fs::create_directories(opts.out_dir);

    std::map<std::string, std::vector<double>> learn_seconds;
    std::map<std::string, std::vector<double>> generate_seconds;
    std::vector<EvalRun> eval_runs;

    for (const auto& given : opts.manifests) {
      const fs::path path = fs::is_directory(given) ? given / "manifest.json" : given;
      json m = load_json_file(path);
      const std::string command = m.value("command", "");
      const std::string model = m.value("model", "");
      if (command == "learn") {
        learn_seconds[model].push_back(m.at("timings").at("learn_seconds").get<double>());
      } else if (command == "generate") {
        if (m.at("timings").contains("generate_total_seconds")) {
          generate_seconds[model].push_back(
              m.at("timings").at("generate_total_seconds").get<double>());
        }
      } else if (command == "evaluate") {
        EvalRun run;
        run.label = m.value("label", "evaluate");
        run.group = m.value("model", "");
        if (run.group.empty()) run.group = run.label;
        run.dir = path.parent_path();
        run.manifest = std::move(m);
        eval_runs.push_back(std::move(run));
      }
    }

    const bool json_format = opts.format == "json";
    std::vector<std::string> written;

    // Timing table (learning and generation phases).
    {
      std::vector<std::string> models;
      for (const auto& [model, v] : learn_seconds) models.push_back(model);
      for (const auto& [model, v] : generate_seconds) {
        if (!learn_seconds.count(model)) models.push_back(model);
      }
      std::sort(models.begin(), models.end());
      if (!models.empty()) {
        std::ostringstream csv;
        csv << "model,learn_s,generate_s\n";
        json rows = json::array();
        for (const auto& model : models) {
          const auto ls = mean_stdev(learn_seconds[model]);
          const auto gs = mean_stdev(generate_seconds[model]);
          csv << model << ',' << (learn_seconds[model].empty() ? "" : csv_cell(ls.mean)) << ','
              << (generate_seconds[model].empty() ? "" : csv_cell(gs.mean)) << '\n';
          rows.push_back({{"model", model},
                          {"learn_s", learn_seconds[model].empty() ? json() : json(ls.mean)},
                          {"generate_s",
                           generate_seconds[model].empty() ? json() : json(gs.mean)}});
        }
        if (json_format) {
          write_text_file(opts.out_dir / "timing.json", rows.dump(2) + "\n");
          written.push_back("timing.json");
        } else {
          write_text_file(opts.out_dir / "timing.csv", csv.str());
          written.push_back("timing.csv");
        }
      }
    }

    // Characteristics table: original row plus one aggregated row per group.
    {
      NamedCharacteristics table;
      bool have_original = false;
      std::map<std::string, std::vector<CharacteristicsVector>> groups;
      std::map<std::string, std::string> group_label;
      for (const auto& run : eval_runs) {
        if (!run.has_output("characteristics.json")) continue;
        const NamedCharacteristics rows =
            characteristics_from_json(load_json_file(run.dir / "characteristics.json"));
        for (const auto& [name, v] : rows) {
          if (name == "mean") {
            groups[run.group].push_back(v);
            group_label[run.group] = run.label;
          }
        }
        if (!have_original && !rows.empty()) {
          table.push_back(rows.front());
          have_original = true;
        }
      }
      for (const auto& [group, vectors] : groups) {
        const std::string name =
            vectors.size() > 1 ? group + "*" : group_label[group];
        table.emplace_back(name, aggregate(vectors));
      }
      if (!table.empty()) {
        if (json_format) {
          write_text_file(opts.out_dir / "characteristics_table.json",
                          characteristics_to_json(table).dump(2) + "\n");
          written.push_back("characteristics_table.json");
        } else {
          write_text_file(opts.out_dir / "characteristics_table.csv", characteristics_csv(table));
          written.push_back("characteristics_table.csv");
        }
        const RadarData radar = radar_data(table);
        write_text_file(opts.out_dir / "radar.svg", radar.svg);
        write_text_file(opts.out_dir / "radar.csv", radar.csv);
        written.push_back("radar.svg");
      }
    }

    // Fidelity summary and bar charts.
    {
      std::ostringstream csv;
      csv << "label,kind,precision,recall,f1,f1_stdev\n";
      json rows = json::array();
      std::vector<std::pair<std::string, double>> pattern_bars, privacy_bars;
      for (const auto& run : eval_runs) {
        for (const std::string kind : {"pattern", "privacy"}) {
          const std::string file = kind == "pattern" ? "pattern_fidelity.json" : "privacy.json";
          if (!run.has_output(file)) continue;
          const json r = load_json_file(run.dir / file);
          const json& mean = r.at("replica_stats").at("mean");
          const json& stdev = r.at("replica_stats").at("stdev");
          csv << run.label << ',' << kind << ',' << csv_cell(mean.at("precision").get<double>())
              << ',' << csv_cell(mean.at("recall").get<double>()) << ','
              << csv_cell(mean.at("f1").get<double>()) << ','
              << csv_cell(stdev.at("f1").get<double>()) << '\n';
          rows.push_back({{"label", run.label},
                          {"kind", kind},
                          {"precision", mean.at("precision").get<double>()},
                          {"recall", mean.at("recall").get<double>()},
                          {"f1", mean.at("f1").get<double>()},
                          {"f1_stdev", stdev.at("f1").get<double>()}});
          auto& bars = kind == "pattern" ? pattern_bars : privacy_bars;
          bars.emplace_back(run.label, mean.at("f1").get<double>());
        }
      }
      if (!rows.empty()) {
        if (json_format) {
          write_text_file(opts.out_dir / "fidelity_table.json", rows.dump(2) + "\n");
          written.push_back("fidelity_table.json");
        } else {
          write_text_file(opts.out_dir / "fidelity_table.csv", csv.str());
          written.push_back("fidelity_table.csv");
        }
        if (!pattern_bars.empty()) {
          write_text_file(opts.out_dir / "pattern_bars.svg",
                          bar_svg("Pattern fidelity (F1)", pattern_bars));
          written.push_back("pattern_bars.svg");
        }
        if (!privacy_bars.empty()) {
          write_text_file(opts.out_dir / "privacy_bars.svg",
                          bar_svg("Privacy overlap (F1, high = low privacy)", privacy_bars));
          written.push_back("privacy_bars.svg");
        }
      }
    }

    out << "report written to " << opts.out_dir.string() << " (";
    for (std::size_t i = 0; i < written.size(); ++i) {
      if (i) out << ", ";
      out << written[i];
    }
    out << ")\n";
  });
}

}  // namespace itemsynth
