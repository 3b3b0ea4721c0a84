#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rfmx/commands.hpp"

using namespace rfmx;

namespace {

void add_partition_flags(CLI::App* cmd, PartitionSpec& spec) {
  cmd->add_option("--max-block", spec.max_block, "leaf size threshold")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-depth", spec.max_depth, "maximum partition depth")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-diag", spec.max_diag, "greedy LCS diagonal cap");
  cmd->add_option("--hard-gap", spec.hard_gap, "size gap treated as hard");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative FM-index toolkit"};
  app.require_subcommand(1);

  cli::BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "index a reference text");
  build_cmd->add_option("input", build.input, "text file")->required();
  build_cmd->add_option("output", build.output, "container to write")->required();
  build_cmd->add_option("--rate", build.rate, "suffix array sample rate");
  build_cmd->add_flag("--fasta", build.fasta, "read the first FASTA record");
  build_cmd->add_flag("--dna", build.dna, "fixed DNA alphabet (unknown bytes become N)");

  cli::BuildRelativeOptions rel;
  std::string mode = "lcs";
  auto* rel_cmd = app.add_subcommand("build-relative", "index a target relative to a reference");
  rel_cmd->add_option("ref_index", rel.ref_index, "reference container")->required();
  rel_cmd->add_option("target", rel.target, "target text file")->required();
  rel_cmd->add_option("output", rel.output, "container to write")->required();
  rel_cmd->add_option("--mode", mode, "lcs (counting) or invariant (counting + locate)")
      ->check(CLI::IsMember({"lcs", "invariant"}));
  rel_cmd->add_flag("--fasta", rel.fasta, "read the first FASTA record");
  add_partition_flags(rel_cmd, rel.spec);

  cli::QueryOptions query;
  auto* query_cmd = app.add_subcommand("query", "run pattern queries");
  query_cmd->require_subcommand(1);
  for (const char* kind : {"count", "locate"}) {
    auto* sub = query_cmd->add_subcommand(kind, kind == std::string("count")
                                                    ? "occurrence count per pattern"
                                                    : "sorted positions per pattern");
    sub->add_option("index", query.index, "container")->required();
    sub->add_option("patterns", query.patterns, "one pattern per line")->required();
    sub->add_option("--ref", query.ref, "reference container for relative indexes");
  }

  cli::StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "describe a container");
  stats_cmd->add_option("index", stats.index, "container")->required();
  stats_cmd->add_option("--ref", stats.ref, "reference container for relative indexes");

  cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "check every structure against slow oracles");
  verify_cmd->add_option("--ref", verify.ref, "reference text (synthetic when omitted)");
  verify_cmd->add_option("--target", verify.target, "target text");
  verify_cmd->add_flag("--fasta", verify.fasta, "read the first FASTA record");
  verify_cmd->add_option("--n", verify.n, "synthetic text length");
  verify_cmd->add_option("--seeds", verify.seeds, "number of seeds");
  verify_cmd->add_option("--patterns", verify.patterns, "patterns per check");

  cli::BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "build and query timings as key=value lines");
  bench_cmd->add_option("--ref", bench.ref, "reference text (synthetic when omitted)");
  bench_cmd->add_option("--target", bench.target, "target text");
  bench_cmd->add_flag("--fasta", bench.fasta, "read the first FASTA record");
  bench_cmd->add_option("--n", bench.n, "synthetic text length");
  bench_cmd->add_option("--mutation", bench.mutation, "synthetic substitution rate")
      ->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--seed", bench.seed, "random seed");
  bench_cmd->add_option("--patterns", bench.patterns, "query count");
  bench_cmd->add_option("--pattern-length", bench.pattern_length, "query length");
  bench_cmd->add_option("--sample-rate", bench.rate, "suffix array sample rate");
  add_partition_flags(bench_cmd, bench.spec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsage;
  }

  if (*build_cmd) return cli::cmd_build(build, std::cout, std::cerr);
  if (*rel_cmd) {
    rel.mode = mode == "invariant" ? RelativeMode::invariant : RelativeMode::lcs;
    return cli::cmd_build_relative(rel, std::cout, std::cerr);
  }
  if (*query_cmd) {
    query.locate = query_cmd->got_subcommand("locate");
    return cli::cmd_query(query, std::cout, std::cerr);
  }
  if (*stats_cmd) return cli::cmd_stats(stats, std::cout, std::cerr);
  if (*verify_cmd) return cli::cmd_verify(verify, std::cout, std::cerr);
  if (*bench_cmd) return cli::cmd_bench(bench, std::cout, std::cerr);
  return cli::kUsage;
}
