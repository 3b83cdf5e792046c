#include <CLI11.hpp>

#include "pathweave/commands.hpp"

int main(int argc, char** argv) {
  pathweave::configure_logging();

  CLI::App app{"pathweave: topic pathways, events and emotions from a timestamped text stream"};
  app.require_subcommand(1);

  pathweave::RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Process a JSONL stream into topic pathways and events");
  run_cmd->add_option("--config", run.config, "TOML configuration file")->check(CLI::ExistingFile);
  run_cmd->add_option("--input", run.input, "JSONL input (id, text, timestamp, author)")->required();
  run_cmd->add_option("--out", run.out, "Report directory (overrides run.out)");
  run_cmd->add_option("--state", run.state, "State file (default <out>/state.json)");
  run_cmd->add_flag("--resume", run.resume, "Continue from the state file");
  run_cmd->add_option("--seed", run.seed, "Random seed (overrides run.seed)");

  pathweave::EmotionsOptions emo;
  auto* emo_cmd = app.add_subcommand("emotions", "Score every post on the 16 emotion categories");
  emo_cmd->add_option("--config", emo.config, "TOML configuration file")->check(CLI::ExistingFile);
  emo_cmd->add_option("--input", emo.input, "JSONL input")->required();
  emo_cmd->add_option("--out", emo.out, "Per-post CSV (default stdout)");
  emo_cmd->add_option("--timeline", emo.timeline, "Also write a timeline CSV binned by stream.interval");

  pathweave::ExpandOptions exp;
  auto* exp_cmd = app.add_subcommand("lexicon-expand", "Propose lexicon terms from embedding neighbours");
  exp_cmd->add_option("--config", exp.config, "TOML configuration file")->check(CLI::ExistingFile);
  exp_cmd->add_option("--embedding", exp.embedding, "Embedding in word2vec text format")->required();
  exp_cmd->add_option("--seeds", exp.seeds, "Seed terms as term,Category CSV (default: the lexicon)");
  exp_cmd->add_option("-k,--k", exp.k, "Neighbours per seed")->capture_default_str();
  exp_cmd->add_option("--min-sim", exp.min_sim, "Minimum cosine")->capture_default_str();
  exp_cmd->add_option("--out", exp.out, "Review file (default stdout)");

  pathweave::CoherenceOptions coh;
  auto* coh_cmd = app.add_subcommand("coherence", "Score pathway coherence against a whole-corpus baseline");
  coh_cmd->add_option("--config", coh.config, "TOML configuration file")->check(CLI::ExistingFile);
  coh_cmd->add_option("--state", coh.state, "State file written by run")->required();
  coh_cmd->add_option("-M,--top", coh.m, "Top terms per topic (default coherence.top_terms)");
  coh_cmd->add_option("--scope", coh.scope, "Document counts from 'pathway' or 'corpus'");
  coh_cmd->add_option("--out", coh.out, "CSV output (default stdout)");

  pathweave::ReportOptions rep;
  auto* rep_cmd = app.add_subcommand("report", "Regenerate pathway and event reports from a state file");
  rep_cmd->add_option("--config", rep.config, "TOML configuration file")->check(CLI::ExistingFile);
  rep_cmd->add_option("--state", rep.state, "State file written by run")->required();
  rep_cmd->add_option("--out", rep.out, "Report directory (overrides run.out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run_cmd) return pathweave::guarded([&] { return pathweave::cmd_run(run); });
  if (*emo_cmd) return pathweave::guarded([&] { return pathweave::cmd_emotions(emo); });
  if (*exp_cmd) return pathweave::guarded([&] { return pathweave::cmd_lexicon_expand(exp); });
  if (*coh_cmd) return pathweave::guarded([&] { return pathweave::cmd_coherence(coh); });
  if (*rep_cmd) return pathweave::guarded([&] { return pathweave::cmd_report(rep); });
  return 2;
}
