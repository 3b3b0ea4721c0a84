#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "rfmx/bwtinv.hpp"
#include "rfmx/fmindex.hpp"
#include "rfmx/lcsalign.hpp"
#include "rfmx/relcount.hpp"

namespace rfmx {

enum class RelativeMode { lcs, invariant };

/// Everything produced while building a relative index for one target.
struct RelativeBuild {
  RelativeIndex rel;
  std::optional<RelativeSample> inv;
  Alignment alignment;        // over the two BWTs
  InvariantAlignment g;       // invariant mode only
  PartitionStats partition;   // lcs mode only
  std::uint64_t standalone_bytes = 0;  // FMI1 payload of the target alone
};

RelativeBuild build_relative(std::shared_ptr<const FMIndex> ref, const Text& target,
                             RelativeMode mode, const PartitionSpec& spec = {});

/// Reference text recovered from its index.
Text reference_text(const FMIndex& ref);

namespace cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIoError = 3 };

struct BuildOptions {
  std::string input;
  std::string output;
  std::uint64_t rate = kDefaultSampleRate;
  bool fasta = false;
  bool dna = false;
};

struct BuildRelativeOptions {
  std::string ref_index;
  std::string target;
  std::string output;
  RelativeMode mode = RelativeMode::lcs;
  PartitionSpec spec;
  bool fasta = false;
};

struct QueryOptions {
  std::string index;
  std::string ref;  // reference index, for relative containers
  bool locate = false;
  std::string patterns;
};

struct StatsOptions {
  std::string index;
  std::string ref;
};

struct VerifyOptions {
  std::string ref;     // text files; synthetic pairs when empty
  std::string target;
  bool fasta = false;
  std::uint64_t n = 2000;
  std::uint64_t seeds = 1;
  std::uint64_t patterns = 200;
};

struct BenchOptions {
  std::string ref;
  std::string target;
  bool fasta = false;
  std::uint64_t n = 100000;
  double mutation = 0.005;
  std::uint64_t seed = 1;
  std::uint64_t patterns = 1000;
  std::uint64_t pattern_length = 56;
  std::uint64_t rate = kDefaultSampleRate;
  PartitionSpec spec;
};

int cmd_build(const BuildOptions& o, std::ostream& out, std::ostream& err);
int cmd_build_relative(const BuildRelativeOptions& o, std::ostream& out, std::ostream& err);
int cmd_query(const QueryOptions& o, std::ostream& out, std::ostream& err);
int cmd_stats(const StatsOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err);

/// Worker count for query processing: RFMX_THREADS if set, else hardware.
unsigned query_threads();

}  // namespace cli
}  // namespace rfmx
