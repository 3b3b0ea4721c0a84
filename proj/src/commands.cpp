#include "rfmx/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "rfmx/container.hpp"
#include "rfmx/oracle.hpp"
#include "rfmx/serialize.hpp"
#include "rfmx/synth.hpp"

namespace rfmx {

RelativeBuild build_relative(std::shared_ptr<const FMIndex> ref, const Text& target,
                             RelativeMode mode, const PartitionSpec& spec) {
  if (!(ref->alphabet() == target.alphabet())) throw std::invalid_argument("alphabet mismatch");
  RelativeBuild b;
  const SuffixArray sa2 = build_suffix_array(target);
  const FMIndex ix2 = FMIndex::build(target, sa2, ref->sample().rate);
  b.standalone_bytes = ix2.serialize().size();
  const auto bwt2 = bwt(target, sa2);
  if (mode == RelativeMode::lcs) {
    b.alignment = partitioned_bwt_lcs(*ref, ix2, spec, &b.partition);
  } else {
    const Text s1 = reference_text(*ref);
    const SuffixArray sa1 = build_suffix_array(s1);
    b.g = invariant_subsequence(s1, target);
    b.alignment = induced_bwt_alignment(sa1, sa2, b.g);
  }
  b.rel = RelativeIndex::build(ref, bwt2, b.alignment);
  if (mode == RelativeMode::invariant) b.inv = RelativeSample::build(ref, sa2, b.g);
  return b;
}

Text reference_text(const FMIndex& ref) {
  auto symbols = ref.extract(1, ref.length());
  symbols.push_back(kSentinel);
  return Text(std::move(symbols), ref.alphabet());
}

namespace cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

InputFormat format_of(bool fasta) { return fasta ? InputFormat::fasta : InputFormat::plain; }

template <class T>
void kv(std::ostream& out, const char* key, const T& value) {
  out << key << '=' << value << '\n';
}

void kv_ratio(std::ostream& out, const char* key, double value) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << value;
  kv(out, key, s.str());
}

std::shared_ptr<const FMIndex> load_reference(const std::string& path) {
  IndexFile f = load_index(path);
  if (f.relative()) throw std::invalid_argument("reference must be a standalone index");
  return f.fm;
}

// Splits on '\n', dropping one trailing '\r' per line; a final line break
// does not start an extra line.
std::vector<std::string> split_lines(const std::string& data) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < data.size()) {
    std::size_t end = data.find('\n', start);
    if (end == std::string::npos) end = data.size();
    std::string line = data.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

const char* malformed_reason(const std::string& line) {
  if (line.empty()) return "empty pattern";
  for (unsigned char c : line) {
    if (c < 0x20 || c == 0x7F) return "control character in pattern";
  }
  return nullptr;
}

std::string join_positions(const std::vector<std::uint64_t>& positions) {
  std::string s;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (k) s.push_back(',');
    s += std::to_string(positions[k]);
  }
  return s;
}

}  // namespace

unsigned query_threads() {
  if (const char* env = std::getenv("RFMX_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_build(const BuildOptions& o, std::ostream& out, std::ostream& err) {
  if (o.rate == 0) {
    err << "error: --rate must be at least 1\n";
    return kUsage;
  }
  try {
    const auto start = Clock::now();
    const Text text = load_text(read_file(o.input), format_of(o.fasta),
                                o.dna ? AlphabetKind::dna : AlphabetKind::general);
    const FMIndex fm = FMIndex::build(text, o.rate);
    const auto bytes = encode_standalone(fm);
    const double build_s = seconds_since(start);
    write_file(o.output, bytes);
    kv(out, "kind", "standalone");
    kv(out, "n1", text.length());
    kv(out, "sigma", text.alphabet().size());
    kv(out, "sample_rate", o.rate);
    kv(out, "fmi1_bytes", fm.serialize().size());
    kv(out, "container_bytes", bytes.size());
    kv_ratio(out, "build_seconds", build_s);
    return kOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

int cmd_build_relative(const BuildRelativeOptions& o, std::ostream& out, std::ostream& err) {
  try {
    const auto ref = load_reference(o.ref_index);
    const auto start = Clock::now();
    const Text target = load_text(read_file(o.target), format_of(o.fasta), ref->alphabet());
    RelativeBuild b = build_relative(ref, target, o.mode, o.spec);
    const auto bytes = encode_relative(*ref, b.rel, b.inv ? &*b.inv : nullptr);
    const double build_s = seconds_since(start);
    write_file(o.output, bytes);

    const std::uint64_t rfm = b.rel.serialize(0).size();
    kv(out, "kind", "relative");
    kv(out, "mode", o.mode == RelativeMode::lcs ? "lcs" : "invariant");
    kv(out, "n1", ref->length());
    kv(out, "n2", target.length());
    kv(out, "alignment_length", b.alignment.size());
    kv(out, "bwd", bw_distance(ref->length(), target.length(), b.alignment));
    if (o.mode == RelativeMode::invariant) {
      kv(out, "g_length", b.g.size());
      kv(out, "inv1_bytes", b.inv->serialize(0).size());
      kv(out, "escape_samples", b.inv->escape_values().size());
    } else {
      kv(out, "partition_leaves", b.partition.leaves);
      kv(out, "partition_greedy_leaves", b.partition.greedy_leaves);
      kv(out, "partition_hard", b.partition.predicted_hard);
      kv(out, "partition_fallbacks", b.partition.fallbacks);
    }
    kv(out, "rfm1_bytes", rfm);
    kv(out, "standalone_fmi1_bytes", b.standalone_bytes);
    kv_ratio(out, "relative_over_standalone",
             static_cast<double>(rfm) / static_cast<double>(b.standalone_bytes));
    kv(out, "container_bytes", bytes.size());
    kv_ratio(out, "build_seconds", build_s);
    return kOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int cmd_query(const QueryOptions& o, std::ostream& out, std::ostream& err) {
  IndexFile index;
  std::vector<std::string> lines;
  try {
    std::shared_ptr<const FMIndex> ref;
    if (!o.ref.empty()) ref = load_reference(o.ref);
    index = load_index(o.index, ref);
    lines = split_lines(read_file(o.patterns));
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return e.what() == std::string("relative index requires a reference") ? kUsage : kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (o.locate && !index.can_locate()) {
    err << "error: index has no locate support (build it with --mode invariant)\n";
    return kUsage;
  }

  std::vector<std::string> results(lines.size());
  auto work = [&](std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) {
      if (malformed_reason(lines[k])) continue;
      results[k] = o.locate ? join_positions(index.locate(lines[k]))
                            : std::to_string(index.count(lines[k]));
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(query_threads(), std::max<std::size_t>(1, lines.size() / 64));
  if (threads <= 1) {
    work(0, lines.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (lines.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t from = std::min(lines.size(), t * chunk);
      const std::size_t to = std::min(lines.size(), from + chunk);
      pool.emplace_back(work, from, to);
    }
    for (auto& th : pool) th.join();
  }
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (const char* reason = malformed_reason(lines[k])) {
      err << "line " << k + 1 << ": " << reason << '\n';
    }
    out << results[k] << '\n';
  }
  return kOk;
}

int cmd_stats(const StatsOptions& o, std::ostream& out, std::ostream& err) {
  try {
    std::shared_ptr<const FMIndex> ref;
    if (!o.ref.empty()) ref = load_reference(o.ref);
    const IndexFile f = load_index(o.index, ref);
    kv(out, "kind", f.relative() ? "relative" : "standalone");
    kv(out, "alphabet", f.meta.alphabet.kind() == AlphabetKind::dna ? "dna" : "general");
    kv(out, "sigma", f.meta.alphabet.size());
    for (const auto& [tag, size] : f.section_bytes) {
      std::string key = tag + "_bytes";
      std::transform(key.begin(), key.end(), key.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      kv(out, key.c_str(), size);
    }
    if (!f.relative()) {
      kv(out, "n1", f.fm->length());
      kv(out, "sample_rate", f.fm->sample().rate);
      return kOk;
    }
    kv(out, "n1", f.fm->length());
    kv(out, "n2", f.rel->length());
    kv(out, "alignment_length", f.rel->common_length());
    kv(out, "bwd", f.fm->rows() + f.rel->rows() - 2 * f.rel->common_length());
    kv(out, "d1_length", f.rel->d1().size());
    kv(out, "d2_length", f.rel->d2().size());
    kv(out, "count_delta_entries", f.rel->delta().symbols.size());
    kv(out, "locate", f.inv ? "yes" : "no");
    if (f.inv) {
      kv(out, "g_length", f.inv->m2().zeros());
      kv(out, "escape_samples", f.inv->escape_values().size());
    }
    return kOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return e.what() == std::string("relative index requires a reference") ? kUsage : kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

namespace {

class Verifier {
 public:
  explicit Verifier(std::ostream& out) : out_(out) {}

  // Runs `check`; it returns an empty string on success or a counterexample.
  template <class F>
  void run(const std::string& name, F&& check) {
    std::string failure;
    try {
      failure = check();
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (failure.empty()) {
      out_ << "check " << name << ": ok\n";
    } else {
      ++failures_;
      out_ << "check " << name << ": FAIL\n  counterexample: " << failure << '\n';
    }
  }

  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

// Shrinks a failing pattern from both ends while it still fails.
template <class Fails>
std::string minimize_pattern(std::string p, Fails&& fails) {
  bool changed = true;
  while (changed && p.size() > 1) {
    changed = false;
    if (fails(p.substr(1))) {
      p.erase(0, 1);
      changed = true;
    } else if (fails(p.substr(0, p.size() - 1))) {
      p.pop_back();
      changed = true;
    }
  }
  return p;
}

std::string show(std::span<const std::uint64_t> v) {
  std::vector<std::uint64_t> copy(v.begin(), v.end());
  return "[" + join_positions(copy) + "]";
}

void verify_pair(Verifier& v, const Text& s1, const Text& s2, const std::string& label,
                 std::uint64_t seed, std::uint64_t pattern_count) {
  const SuffixArray sa1 = build_suffix_array(s1);
  const SuffixArray sa2 = build_suffix_array(s2);
  const auto bwt1 = bwt(s1, sa1);
  const auto bwt2 = bwt(s2, sa2);
  const unsigned sigma = s1.alphabet().size();
  const std::string str2 = s2.to_string();

  v.run("suffix_array " + label, [&]() -> std::string {
    for (const auto* pr : {&s1, &s2}) {
      const SuffixArray fast = build_suffix_array(*pr);
      const SuffixArray slow = oracle::naive_suffix_array(*pr);
      for (std::uint64_t r = 1; r <= fast.size(); ++r) {
        if (fast.at(r) != slow.at(r)) {
          return "text length " + std::to_string(pr->length()) + " rank " + std::to_string(r) +
                 " expected " + std::to_string(slow.at(r)) + " got " + std::to_string(fast.at(r));
        }
      }
    }
    return "";
  });

  v.run("bwt_inversion " + label, [&]() -> std::string {
    if (oracle::invert_bwt(bwt1, sigma) != std::vector<Symbol>(s1.symbols().begin(),
                                                                 s1.symbols().end())) {
      return "reference BWT does not invert to the reference";
    }
    if (oracle::invert_bwt(bwt2, sigma) != std::vector<Symbol>(s2.symbols().begin(),
                                                                 s2.symbols().end())) {
      return "target BWT does not invert to the target";
    }
    return "";
  });

  v.run("lcs_dp " + label, [&]() -> std::string {
    const std::size_t lx = std::min<std::size_t>(bwt1.size(), 200);
    const std::size_t ly = std::min<std::size_t>(bwt2.size(), 200);
    for (std::size_t len = 1; len <= std::min(lx, ly); len += len < 20 ? 1 : 17) {
      const std::span<const Symbol> x(bwt1.data(), len), y(bwt2.data(), len);
      const Alignment a = exact_lcs(x, y);
      const auto expect = oracle::memo_lcs_length(x, y);
      if (a.size() != expect || !is_common_subsequence(x, y, a)) {
        return "BWT prefixes of length " + std::to_string(len) + " expected " +
               std::to_string(expect) + " got " + std::to_string(a.size());
      }
    }
    return "";
  });

  auto ref = std::make_shared<const FMIndex>(FMIndex::build(s1, sa1, 8));
  const PartitionSpec small{64, 8, 2000, 2000};
  RelativeBuild lcs_build;
  v.run("partitioned_lcs " + label, [&]() -> std::string {
    lcs_build = build_relative(ref, s2, RelativeMode::lcs, small);
    if (!is_common_subsequence(bwt1, bwt2, lcs_build.alignment)) {
      return "partitioned alignment is not a common subsequence of the BWTs";
    }
    return "";
  });

  v.run("rank " + label, [&]() -> std::string {
    const RelativeIndex& ri = lcs_build.rel;
    if (ri.rows() != bwt2.size()) return "relative index was not built";
    const std::uint64_t rows = bwt2.size();
    const std::uint64_t stride = std::max<std::uint64_t>(1, rows / 5000);
    std::vector<std::uint64_t> seen(sigma, 0);
    for (std::uint64_t i = 0; i <= rows; ++i) {
      if (i > 0) ++seen[bwt2[i - 1]];
      if (i % stride != 0 && i != rows) continue;
      for (unsigned a = 0; a < sigma; ++a) {
        const auto got = ri.rank(static_cast<Symbol>(a), i);
        if (got != seen[a]) {
          return "seed " + std::to_string(seed) + " symbol " +
                 std::string(1, s1.alphabet().decode(static_cast<Symbol>(a))) + " position " +
                 std::to_string(i) + " expected " + std::to_string(seen[a]) + " got " +
                 std::to_string(got);
        }
      }
      if (i > 0 && ri.access(i) != bwt2[i - 1]) {
        return "seed " + std::to_string(seed) + " access at row " + std::to_string(i);
      }
    }
    return "";
  });

  v.run("count " + label, [&]() -> std::string {
    const FMIndex ix2 = FMIndex::build(s2, sa2, 8);
    auto fails = [&](const std::string& p) {
      const auto expect = oracle::naive_count(str2, p);
      return lcs_build.rel.count(p) != expect || ix2.count(p) != expect;
    };
    for (const auto& p : random_patterns(str2, pattern_count, 1, 24, seed * 7919 + 1)) {
      if (fails(p)) {
        const std::string m = minimize_pattern(p, fails);
        return "seed " + std::to_string(seed) + " pattern " + m + " expected " +
               std::to_string(oracle::naive_count(str2, m)) + " relative " +
               std::to_string(lcs_build.rel.count(m)) + " standalone " +
               std::to_string(ix2.count(m));
      }
    }
    return "";
  });

  RelativeBuild inv_build;
  v.run("invariance " + label, [&]() -> std::string {
    inv_build = build_relative(ref, s2, RelativeMode::invariant);
    if (!check_bwt_invariant(s1, s2, sa1, sa2, inv_build.g)) {
      return "seed " + std::to_string(seed) + " invariant_subsequence output of length " +
             std::to_string(inv_build.g.size()) + " is not BWT-invariant";
    }
    return "";
  });

  v.run("locate " + label, [&]() -> std::string {
    if (!inv_build.inv) return "invariant build missing";
    auto got = [&](const std::string& p) {
      std::vector<Symbol> codes;
      if (!encode_pattern(s2.alphabet(), p, codes)) return std::vector<std::uint64_t>{};
      return rel_locate(inv_build.rel, *inv_build.inv, inv_build.rel.find(codes));
    };
    auto fails = [&](const std::string& p) { return got(p) != oracle::naive_locate(str2, p); };
    for (const auto& p : random_patterns(str2, pattern_count, 1, 16, seed * 7919 + 2)) {
      if (fails(p)) {
        const std::string m = minimize_pattern(p, fails);
        return "seed " + std::to_string(seed) + " pattern " + m + " expected " +
               show(oracle::naive_locate(str2, m)) + " got " + show(got(m));
      }
    }
    return "";
  });
}

}  // namespace

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  if (o.ref.empty() != o.target.empty()) {
    err << "error: --ref and --target must be given together\n";
    return kUsage;
  }
  if (o.seeds == 0 || (o.ref.empty() && o.n == 0)) {
    err << "error: --n and --seeds must be positive\n";
    return kUsage;
  }
  Verifier v(out);
  try {
    if (!o.ref.empty()) {
      const std::string r = preprocess_input(read_file(o.ref), format_of(o.fasta));
      const std::string t = preprocess_input(read_file(o.target), format_of(o.fasta));
      const Alphabet alpha = Alphabet::from_bytes(r + t);
      const Text s1 = load_text(r, InputFormat::plain, alpha);
      const Text s2 = load_text(t, InputFormat::plain, alpha);
      for (std::uint64_t seed = 1; seed <= o.seeds; ++seed) {
        out << "pair seed=" << seed << " n1=" << s1.length() << " n2=" << s2.length() << '\n';
        verify_pair(v, s1, s2, "[seed " + std::to_string(seed) + "]", seed, o.patterns);
      }
    } else {
      const MutationRates rates{0.005, 0.0005, 0.0005};
      for (std::uint64_t seed = 1; seed <= o.seeds; ++seed) {
        const std::string r = random_dna(o.n, seed);
        const std::string t = mutate_dna(r, rates, seed + 1000);
        const Text s1 = load_text(r, InputFormat::plain, AlphabetKind::dna);
        const Text s2 = load_text(t, InputFormat::plain, Alphabet::dna());
        out << "pair seed=" << seed << " n1=" << s1.length() << " n2=" << s2.length() << '\n';
        verify_pair(v, s1, s2, "[seed " + std::to_string(seed) + "]", seed, o.patterns);
      }
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }

  v.run("two_choice_lis", [&]() -> std::string {
    std::mt19937_64 rng(o.seeds);
    for (int trial = 0; trial < 300; ++trial) {
      TwoChoiceArray a;
      a.values.resize(1 + rng() % 10);
      for (auto& pair : a.values) {
        for (auto& x : pair) x = rng() % 3 == 0 ? 0 : 1 + rng() % 12;
      }
      const ChoiceSelection sel = two_choice_lis(a);
      const auto expect = oracle::brute_force_two_choice_lis(a);
      bool valid = true;
      for (std::size_t k = 0; k < sel.size(); ++k) {
        const auto val = a.at(sel.index[k], sel.choice[k]);
        if (val == 0) valid = false;
        if (k && (sel.index[k] <= sel.index[k - 1] ||
                  val <= a.at(sel.index[k - 1], sel.choice[k - 1]))) {
          valid = false;
        }
      }
      if (!valid || sel.size() != expect) {
        std::string s;
        for (const auto& pair : a.values) {
          s += "(" + std::to_string(pair[0]) + "," + std::to_string(pair[1]) + ")";
        }
        return "array " + s + " expected " + std::to_string(expect) + " got " +
               std::to_string(sel.size());
      }
    }
    return "";
  });

  v.run("reduction", [&]() -> std::string {
    for (unsigned n = 1; n <= 4; ++n) {
      std::vector<unsigned> p1(n);
      std::iota(p1.begin(), p1.end(), 1u);
      do {
        for (unsigned m = 1; m <= std::min(n, 3u); ++m) {
          std::vector<unsigned> p2(m);
          std::iota(p2.begin(), p2.end(), 1u);
          do {
            if (oracle::permutation_embeds(p1, p2) !=
                oracle::invariant_a_subsequence_exists(p1, p2)) {
              std::vector<std::uint64_t> a(p1.begin(), p1.end()), b(p2.begin(), p2.end());
              return "p1 " + show(a) + " p2 " + show(b);
            }
          } while (std::next_permutation(p2.begin(), p2.end()));
        }
      } while (std::next_permutation(p1.begin(), p1.end()));
    }
    return "";
  });

  if (v.failures() == 0) {
    out << "verify: ok\n";
    return kOk;
  }
  out << "verify: FAILED (" << v.failures() << " checks)\n";
  return kVerifyFailed;
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  if (o.ref.empty() != o.target.empty()) {
    err << "error: --ref and --target must be given together\n";
    return kUsage;
  }
  if (o.rate == 0 || o.pattern_length == 0 || (o.ref.empty() && o.n == 0)) {
    err << "error: --n, --sample-rate and --pattern-length must be positive\n";
    return kUsage;
  }
  Text s1, s2;
  try {
    if (!o.ref.empty()) {
      s1 = load_text(read_file(o.ref), format_of(o.fasta), AlphabetKind::dna);
      s2 = load_text(read_file(o.target), format_of(o.fasta), Alphabet::dna());
    } else {
      const std::string r = random_dna(o.n, o.seed);
      const double m = o.mutation;
      s1 = load_text(r, InputFormat::plain, AlphabetKind::dna);
      s2 = load_text(mutate_dna(r, {m, m / 10, m / 10}, o.seed + 1000), InputFormat::plain,
                     Alphabet::dna());
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }

  auto t = Clock::now();
  auto ref = std::make_shared<const FMIndex>(FMIndex::build(s1, o.rate));
  const double build_ref_s = seconds_since(t);
  t = Clock::now();
  const FMIndex ix2 = FMIndex::build(s2, o.rate);
  const double build_standalone_s = seconds_since(t);
  t = Clock::now();
  const RelativeBuild lcs = build_relative(ref, s2, RelativeMode::lcs, o.spec);
  const double build_lcs_s = seconds_since(t);
  t = Clock::now();
  const RelativeBuild inv = build_relative(ref, s2, RelativeMode::invariant, o.spec);
  const double build_inv_s = seconds_since(t);

  const auto patterns =
      random_patterns(s2.to_string(), o.patterns, o.pattern_length, o.pattern_length, o.seed + 1);
  std::uint64_t sum_standalone = 0, sum_relative = 0;
  t = Clock::now();
  for (const auto& p : patterns) sum_standalone += ix2.count(p);
  const double query_standalone_s = seconds_since(t);
  t = Clock::now();
  for (const auto& p : patterns) sum_relative += lcs.rel.count(p);
  const double query_relative_s = seconds_since(t);

  const std::uint64_t fmi2 = ix2.serialize().size();
  const std::uint64_t rfm_lcs = lcs.rel.serialize(0).size();
  const std::uint64_t rfm_inv = inv.rel.serialize(0).size();
  const std::uint64_t inv1 = inv.inv->serialize(0).size();
  kv(out, "n1", s1.length());
  kv(out, "n2", s2.length());
  kv(out, "lcs_length", lcs.alignment.size());
  kv(out, "bwd", bw_distance(s1.length(), s2.length(), lcs.alignment));
  kv(out, "g_length", inv.g.size());
  kv_ratio(out, "g_over_lcs",
           static_cast<double>(inv.g.size()) / static_cast<double>(lcs.alignment.size()));
  kv_ratio(out, "g_over_n", static_cast<double>(inv.g.size()) / static_cast<double>(s1.length()));
  kv_ratio(out, "lcs_over_n",
           static_cast<double>(lcs.alignment.size()) / static_cast<double>(s1.length()));
  kv(out, "fmi1_ref_bytes", ref->serialize().size());
  kv(out, "fmi1_target_bytes", fmi2);
  kv(out, "rfm1_lcs_bytes", rfm_lcs);
  kv(out, "rfm1_invariant_bytes", rfm_inv);
  kv(out, "inv1_bytes", inv1);
  kv_ratio(out, "relative_over_standalone",
           static_cast<double>(rfm_lcs) / static_cast<double>(fmi2));
  kv_ratio(out, "relative_over_standalone_pct",
           100.0 * static_cast<double>(rfm_lcs) / static_cast<double>(fmi2));
  kv_ratio(out, "build_reference_seconds", build_ref_s);
  kv_ratio(out, "build_standalone_seconds", build_standalone_s);
  kv_ratio(out, "build_relative_lcs_seconds", build_lcs_s);
  kv_ratio(out, "build_relative_invariant_seconds", build_inv_s);
  kv(out, "query_patterns", patterns.size());
  kv_ratio(out, "query_standalone_seconds", query_standalone_s);
  kv_ratio(out, "query_relative_seconds", query_relative_s);
  kv_ratio(out, "query_time_pct",
           query_standalone_s > 0 ? 100.0 * query_relative_s / query_standalone_s : 0.0);
  if (sum_standalone != sum_relative) {
    err << "error: relative and standalone counts differ\n";
    return kVerifyFailed;
  }
  return kOk;
}

}  // namespace cli
}  // namespace rfmx
