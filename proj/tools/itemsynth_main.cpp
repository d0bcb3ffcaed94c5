#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "itemsynth/errors.hpp"
#include "itemsynth/harness.hpp"

namespace {

using itemsynth::EvaluateOptions;
using itemsynth::GenerateOptions;
using itemsynth::LearnOptions;
using itemsynth::MineOptions;
using itemsynth::ReportOptions;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"itemset-based synthetic transactional dataset toolkit"};
  app.set_version_flag("--version", std::string(itemsynth::kToolVersion));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.footer("learn/generate/evaluate accept --config FILE: key=value preset lines expanded\n"
             "in place, so flags given after --config override the preset.");

  MineOptions mine;
  auto* mine_cmd = app.add_subcommand("mine", "mine frequent itemsets into a JSON file");
  mine_cmd->add_option("--input,-i", mine.input, "transaction .dat file")->required();
  mine_cmd->add_option("--minsup,-s", mine.minsup, "relative support threshold in (0,1]")
      ->required();
  mine_cmd->add_option("--out,-o", mine.output, "output JSON file")->required();
  mine_cmd->add_flag("--allow-empty", mine.allow_empty, "accept blank lines as empty transactions");

  LearnOptions learn;
  double learn_minsup = -1.0;
  std::uint64_t learn_seed = 0;
  auto* learn_cmd = app.add_subcommand("learn", "learn a generative model from a dataset");
  learn_cmd->add_option("--input,-i", learn.input, "transaction .dat file")->required();
  learn_cmd->add_option("--model,-m", learn.model, "igm | lda | iim")->required();
  auto* learn_minsup_opt =
      learn_cmd->add_option("--minsup,-s", learn_minsup, "support level (igm and lda)");
  learn_cmd->add_option("--out,-o", learn.out_dir, "output directory")->required();
  learn_cmd->add_option("--label", learn.label, "run label used in reports");
  auto* learn_seed_opt = learn_cmd->add_option("--seed", learn_seed, "master seed (lda)");
  learn_cmd->add_flag("--allow-empty", learn.allow_empty,
                      "accept blank lines as empty transactions");
  learn_cmd->add_option("--noise-universe", learn.noise_universe,
                        "igm noise universe: effective | full")
      ->check(CLI::IsMember({"effective", "full"}));
  learn_cmd->add_option("--alpha", learn.lda.alpha, "lda doc-topic prior (default 50/K)");
  learn_cmd->add_option("--beta", learn.lda.beta, "lda topic-word prior");
  learn_cmd->add_option("--iterations", learn.lda.iterations, "lda gibbs iterations");
  learn_cmd->add_option("--burnin", learn.lda.burnin, "lda burn-in iterations");
  learn_cmd->add_option("--samples", learn.lda.samples, "lda posterior-mean sample count");
  learn_cmd->add_option("--rounds", learn.iim.rounds, "iim structural rounds");
  learn_cmd->add_option("--max-candidates", learn.iim.max_candidates_per_round,
                        "iim candidates per round");
  learn_cmd->add_option("--min-p", learn.iim.min_p, "iim probability floor");
  learn_cmd->add_option("--lambda", learn.iim.lambda, "iim uncovered-item penalty");

  GenerateOptions gen;
  std::uint64_t gen_seed = 0;
  bool gen_retry_empty = false;
  auto* gen_cmd = app.add_subcommand("generate", "sample replica datasets from a model file");
  gen_cmd->add_option("--model,-m", gen.model_file, "model JSON file")->required();
  gen_cmd->add_option("--n", gen.n, "transactions per replica (default: model source size)");
  gen_cmd->add_option("--replicas,-r", gen.replicas, "number of replica datasets");
  auto* gen_seed_opt = gen_cmd->add_option("--seed", gen_seed, "master seed");
  gen_cmd->add_option("--out,-o", gen.out_dir, "output directory")->required();
  gen_cmd->add_option("--label", gen.label, "run label used in reports");
  gen_cmd->add_option("--threads", gen.threads, "worker threads (0 = auto)");
  auto* gen_retry_opt = gen_cmd->add_flag(
      "--retry-empty,!--no-retry-empty", gen_retry_empty,
      "redraw empty transactions (default: off for igm, on for iim)");

  EvaluateOptions eval;
  std::string grid_spec;
  auto* eval_cmd = app.add_subcommand("evaluate", "score replicas against the original dataset");
  eval_cmd->add_option("--original,-i", eval.original, "original .dat file")->required();
  eval_cmd->add_option("--replicas,-r", eval.replica_glob, "replica file or glob")->required();
  eval_cmd->add_option("--suite", eval.suite, "characteristics | patterns | privacy | all");
  eval_cmd->add_option("--grid", grid_spec, "support grid, e.g. 0.1:0.9:0.1 or 0.2,0.5");
  eval_cmd->add_option("--out,-o", eval.out_dir, "output directory")->required();
  eval_cmd->add_option("--label", eval.label, "run label used in reports");
  eval_cmd->add_option("--model", eval.model, "generator tag for report grouping");
  eval_cmd->add_flag("--allow-empty", eval.allow_empty,
                     "accept blank lines in the original dataset");
  eval_cmd->add_option("--threads", eval.threads, "worker threads (0 = auto)");

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "aggregate run manifests into tables and charts");
  report_cmd->add_option("manifests", report.manifests, "manifest files or run directories")
      ->required();
  report_cmd->add_option("--out,-o", report.out_dir, "output directory")->required();
  report_cmd->add_option("--format", report.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  try {
    std::vector<std::string> args =
        itemsynth::expand_config_args(std::vector<std::string>(argv + 1, argv + argc));
    std::reverse(args.begin(), args.end());  // CLI11 consumes reversed vectors
    app.parse(std::move(args));
  } catch (const itemsynth::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors exit 2
  }

  if (mine_cmd->parsed()) {
    return itemsynth::cmd_mine(mine, std::cout, std::cerr);
  }
  if (learn_cmd->parsed()) {
    if (learn_minsup_opt->count() > 0) learn.minsup = learn_minsup;
    if (learn_seed_opt->count() > 0) learn.seed = learn_seed;
    return itemsynth::cmd_learn(learn, std::cout, std::cerr);
  }
  if (gen_cmd->parsed()) {
    if (gen_seed_opt->count() > 0) gen.seed = gen_seed;
    if (gen_retry_opt->count() > 0) gen.retry_empty = gen_retry_empty;
    return itemsynth::cmd_generate(gen, std::cout, std::cerr);
  }
  if (eval_cmd->parsed()) {
    if (!grid_spec.empty()) {
      try {
        eval.grid = itemsynth::parse_support_grid(grid_spec);
      } catch (const itemsynth::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.code());
      }
    }
    return itemsynth::cmd_evaluate(eval, std::cout, std::cerr);
  }
  if (report_cmd->parsed()) {
    return itemsynth::cmd_report(report, std::cout, std::cerr);
  }
  return 2;
}
