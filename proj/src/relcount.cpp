#include "rfmx/relcount.hpp"

#include <algorithm>
#include <stdexcept>

#include "rfmx/serialize.hpp"

namespace rfmx {

CountDelta CountDelta::build(const CumulativeCounts& ref, const CumulativeCounts& target) {
  if (ref.sigma() != target.sigma()) throw std::invalid_argument("alphabet mismatch");
  CountDelta d;
  for (unsigned a = 0; a < ref.sigma(); ++a) {
    const auto s = static_cast<Symbol>(a);
    if (ref.frequency(s) != target.frequency(s)) {
      d.symbols.push_back(s);
      d.s2_after.push_back(target.before(static_cast<Symbol>(a + 1)));
    }
  }
  return d;
}

std::uint64_t CountDelta::before(Symbol a, const CumulativeCounts& ref) const {
  // The difference to the reference is constant between listed symbols.
  const auto it = std::lower_bound(symbols.begin(), symbols.end(), a);
  if (it == symbols.begin()) return ref.before(a);
  const std::size_t k = static_cast<std::size_t>(it - symbols.begin()) - 1;
  return ref.before(a) - ref.before(static_cast<Symbol>(symbols[k] + 1)) + s2_after[k];
}

RelativeIndex RelativeIndex::build(std::shared_ptr<const FMIndex> ref,
                                   std::span<const Symbol> target_bwt,
                                   const Alignment& align) {
  if (!ref) throw std::invalid_argument("missing reference index");
  const auto ref_bwt = ref->bwt().to_vector();
  if (!is_common_subsequence(ref_bwt, target_bwt, align)) {
    throw std::invalid_argument("not a common subsequence");
  }
  const unsigned sigma = ref->alphabet().size();
  for (auto s : target_bwt) {
    if (s >= sigma) throw std::invalid_argument("target symbol out of alphabet");
  }
  RelativeIndex ri;
  ri.ref_ = std::move(ref);
  ri.n2_ = target_bwt.size() - 1;

  // Start from all ones, then clear C's rows.
  BitBuilder b1(ref_bwt.size()), b2(target_bwt.size());
  for (std::uint64_t p = 1; p <= ref_bwt.size(); ++p) b1.set(p);
  for (std::uint64_t p = 1; p <= target_bwt.size(); ++p) b2.set(p);
  for (auto p : align.x_pos) b1.set(p, false);
  for (auto p : align.y_pos) b2.set(p, false);
  ri.b1_ = std::move(b1).build();
  ri.b2_ = std::move(b2).build();

  std::vector<Symbol> d1, d2;
  for (std::uint64_t p = 1; p <= ref_bwt.size(); ++p) {
    if (ri.b1_.get(p)) d1.push_back(ref_bwt[p - 1]);
  }
  for (std::uint64_t p = 1; p <= target_bwt.size(); ++p) {
    if (ri.b2_.get(p)) d2.push_back(target_bwt[p - 1]);
  }
  ri.d1_ = WaveletSequence(d1, sigma);
  ri.d2_ = WaveletSequence(d2, sigma);
  ri.delta_ = CountDelta::build(ri.ref_->counts(), char_counts(target_bwt, sigma));
  return ri;
}

std::uint64_t RelativeIndex::mirror_row(std::uint64_t i) const {
  const std::uint64_t zeros = b2_.rank0(i);
  return zeros == 0 ? 0 : b1_.select0(zeros);
}

std::uint64_t RelativeIndex::rank(Symbol a, std::uint64_t i) const {
  if (i > rows()) throw std::out_of_range("out of range");
  if (a >= ref_->alphabet().size()) throw std::out_of_range("symbol out of alphabet");
#ifdef RFMX_FAULT_REL_RANK
  const std::uint64_t zeros = b2_.rank0(i);
  const std::uint64_t k = zeros > 1 ? b1_.select0(zeros) - 1 : mirror_row(i);
#else
  const std::uint64_t k = mirror_row(i);
#endif
  return ref_->bwt().rank(a, k) - d1_.rank(a, b1_.rank1(k)) + d2_.rank(a, b2_.rank1(i));
}

Symbol RelativeIndex::access(std::uint64_t i) const {
  if (i == 0 || i > rows()) throw std::out_of_range("out of range");
  if (b2_.get(i)) return d2_.access(b2_.rank1(i));
  return ref_->bwt().access(b1_.select0(b2_.rank0(i)));
}

SuffixRange RelativeIndex::backward_extend(SuffixRange range, Symbol a) const {
  if (range.empty()) return {1, 0};
  const std::uint64_t base = cumulative(a);
  return {base + rank(a, range.lo - 1) + 1, base + rank(a, range.hi)};
}

SuffixRange RelativeIndex::find(std::span<const Symbol> pattern) const {
  SuffixRange range = full_range();
  for (auto it = pattern.rbegin(); it != pattern.rend() && !range.empty(); ++it) {
    if (*it >= ref_->alphabet().size()) return {1, 0};
    range = backward_extend(range, *it);
  }
  return range;
}

std::uint64_t RelativeIndex::count(std::string_view pattern) const {
  std::vector<Symbol> codes;
  if (!encode_pattern(ref_->alphabet(), pattern, codes)) return 0;
  return count(codes);
}

std::uint64_t RelativeIndex::lf(std::uint64_t row) const {
  const Symbol a = access(row);
  return cumulative(a) + rank(a, row);
}

std::uint64_t RelativeIndex::difference_bits() const {
  return d1_.payload_bits() + d2_.payload_bits() + delta_.symbols.size() * (8 + 64) +
         b1_.ones() + b2_.ones();
}

std::vector<std::uint8_t> RelativeIndex::serialize(std::uint64_t reference_digest) const {
  ByteWriter w;
  w.u64(reference_digest);
  w.u64(n2_);
  b1_.write(w);
  b2_.write(w);
  d1_.write(w);
  d2_.write(w);
  w.u64(delta_.symbols.size());
  for (std::size_t k = 0; k < delta_.symbols.size(); ++k) {
    w.u8(delta_.symbols[k]);
    w.u64(delta_.s2_after[k]);
  }
  return std::move(w).take();
}

RelativeIndex RelativeIndex::deserialize(std::span<const std::uint8_t> bytes,
                                         std::shared_ptr<const FMIndex> ref,
                                         std::uint64_t reference_digest) {
  ByteReader r(bytes);
  if (r.u64() != reference_digest) throw FormatError("reference mismatch");
  RelativeIndex ri;
  ri.ref_ = std::move(ref);
  ri.n2_ = r.u64();
  ri.b1_ = BitArray::read(r);
  ri.b2_ = BitArray::read(r);
  ri.d1_ = WaveletSequence::read(r);
  ri.d2_ = WaveletSequence::read(r);
  const std::uint64_t entries = r.u64();
  if (entries > 256) throw FormatError("RFM1 count delta too large");
  for (std::uint64_t k = 0; k < entries; ++k) {
    ri.delta_.symbols.push_back(r.u8());
    ri.delta_.s2_after.push_back(r.u64());
  }
  if (!r.done()) throw FormatError("trailing bytes in RFM1");
  const unsigned sigma = ri.ref_->alphabet().size();
  if (ri.b1_.size() != ri.ref_->rows() || ri.b2_.size() != ri.n2_ + 1 ||
      ri.b1_.zeros() != ri.b2_.zeros() || ri.d1_.size() != ri.b1_.ones() ||
      ri.d2_.size() != ri.b2_.ones() || ri.d1_.sigma() != sigma || ri.d2_.sigma() != sigma ||
      !std::is_sorted(ri.delta_.symbols.begin(), ri.delta_.symbols.end())) {
    throw FormatError("RFM1 section inconsistent");
  }
  for (auto s : ri.delta_.symbols) {
    if (s >= sigma) throw FormatError("RFM1 count delta symbol out of alphabet");
  }
  return ri;
}

}  // namespace rfmx
