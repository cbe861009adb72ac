#include "avrsa/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "avrsa/topology.hpp"

namespace avrsa {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

// out[i] = in[i + shift] for a little-endian multiword bit vector.
void shift_down(const std::vector<std::uint64_t>& in, std::size_t shift,
                std::vector<std::uint64_t>& out) {
  const std::size_t n = in.size();
  const std::size_t ws = shift / kWordBits;
  const std::size_t bs = shift % kWordBits;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t lo = i + ws < n ? in[i + ws] : 0;
    std::uint64_t hi = i + ws + 1 < n ? in[i + ws + 1] : 0;
    out[i] = bs == 0 ? lo : (lo >> bs) | (hi << (kWordBits - bs));
  }
}

}  // namespace

SpectrumBitmap::SpectrumBitmap(std::size_t slots, bool all_free)
    : size_(slots), words_(word_count(slots), all_free ? ~std::uint64_t{0} : 0) {
  clear_tail();
}

SpectrumBitmap SpectrumBitmap::from_string(std::string_view bits) {
  SpectrumBitmap b(bits.size(), false);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      b.set_free(i);
    } else if (bits[i] != '0') {
      throw SpectrumError("bitmap string may only contain '0' and '1'");
    }
  }
  return b;
}

std::string SpectrumBitmap::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (is_free(i)) s[i] = '1';
  }
  return s;
}

void SpectrumBitmap::clear_tail() {
  if (size_ % kWordBits != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (size_ % kWordBits)) - 1;
  }
}

void SpectrumBitmap::check_block(const SlotBlock& b) const {
  if (b.len == 0 || b.end() > size_) {
    throw SpectrumError("slot block [" + std::to_string(b.start) + ", " +
                        std::to_string(b.end()) + ") outside bitmap of " +
                        std::to_string(size_));
  }
}

bool SpectrumBitmap::is_free(std::size_t slot) const {
  if (slot >= size_) throw SpectrumError("slot index out of range");
  return (words_[slot / kWordBits] >> (slot % kWordBits)) & 1U;
}

bool SpectrumBitmap::all_free(const SlotBlock& b) const {
  check_block(b);
  for (std::size_t i = b.start; i < b.end(); ++i) {
    if (!is_free(i)) return false;
  }
  return true;
}

bool SpectrumBitmap::all_busy(const SlotBlock& b) const {
  check_block(b);
  for (std::size_t i = b.start; i < b.end(); ++i) {
    if (is_free(i)) return false;
  }
  return true;
}

std::size_t SpectrumBitmap::count_free() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t SpectrumBitmap::longest_free_run() const {
  std::size_t best = 0;
  std::size_t run = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    run = is_free(i) ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

void SpectrumBitmap::set_free(std::size_t slot) {
  if (slot >= size_) throw SpectrumError("slot index out of range");
  words_[slot / kWordBits] |= std::uint64_t{1} << (slot % kWordBits);
}

void SpectrumBitmap::set_busy(std::size_t slot) {
  if (slot >= size_) throw SpectrumError("slot index out of range");
  words_[slot / kWordBits] &= ~(std::uint64_t{1} << (slot % kWordBits));
}

void SpectrumBitmap::set_free(const SlotBlock& b) {
  check_block(b);
  for (std::size_t i = b.start; i < b.end(); ++i) set_free(i);
}

void SpectrumBitmap::set_busy(const SlotBlock& b) {
  check_block(b);
  for (std::size_t i = b.start; i < b.end(); ++i) set_busy(i);
}

void SpectrumBitmap::run_starts(std::size_t need, std::vector<std::uint64_t>& acc,
                                std::vector<std::uint64_t>& tmp) const {
  // Doubling AND: after covering c slots, bit i says [i, i + c) is free.
  acc.assign(words_.begin(), words_.end());
  tmp.resize(words_.size());
  std::size_t covered = 1;
  while (covered < need) {
    const std::size_t step = std::min(covered, need - covered);
    shift_down(acc, step, tmp);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] &= tmp[i];
    covered += step;
  }
}

std::optional<SlotBlock> SpectrumBitmap::lowest_fit(std::size_t need) const {
  if (need == 0 || need > size_) return std::nullopt;
  thread_local std::vector<std::uint64_t> starts;
  thread_local std::vector<std::uint64_t> scratch;
  run_starts(need, starts, scratch);
  for (std::size_t w = 0; w < starts.size(); ++w) {
    if (starts[w] != 0) {
      return SlotBlock{w * kWordBits + static_cast<std::size_t>(std::countr_zero(starts[w])), need};
    }
  }
  return std::nullopt;
}

SpectrumBitmap& SpectrumBitmap::operator&=(const SpectrumBitmap& other) {
  if (other.size_ != size_) {
    throw SpectrumError("bitmap length mismatch: " + std::to_string(size_) + " vs " +
                        std::to_string(other.size_));
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

SpectrumBitmap intersect(const SpectrumBitmap& a, const SpectrumBitmap& b) {
  SpectrumBitmap out = a;
  out &= b;
  return out;
}

bool is_feasible(const SpectrumBitmap& bitmap, std::size_t need) {
  return bitmap.lowest_fit(need).has_value();
}

SlotBlock first_fit(const SpectrumBitmap& bitmap, std::size_t need) {
  if (auto b = bitmap.lowest_fit(need)) return *b;
  throw SpectrumError("no run of " + std::to_string(need) + " free slots");
}

std::size_t demand_to_slots(double rate_gbps, double slot_ghz, double guard_ghz) {
  if (!(rate_gbps > 0.0) || !(slot_ghz > 0.0) || guard_ghz < 0.0) {
    throw std::invalid_argument("demand_to_slots: rate and slot width must be positive");
  }
  // Guard against 100/12.5 style quotients landing a hair above an integer.
  auto slots_for = [slot_ghz](double ghz) {
    const double q = ghz / slot_ghz;
    const double r = std::round(q);
    return static_cast<std::size_t>(std::abs(q - r) < 1e-9 ? r : std::ceil(q));
  };
  return slots_for(rate_gbps) + slots_for(guard_ghz);
}

void allocate(NetworkGraph& g, std::span<const LinkId> links, const SlotBlock& block) {
  std::vector<LinkBlock> blocks;
  blocks.reserve(links.size());
  for (auto l : links) blocks.push_back({l, block});
  allocate(g, blocks);
}

void allocate(NetworkGraph& g, std::span<const LinkBlock> blocks) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& lb = blocks[i];
    if (!g.link(lb.link).bitmap.all_free(lb.block)) {
      throw SpectrumError("slot conflict on link " + std::to_string(index(lb.link)));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (blocks[j].link == lb.link && blocks[j].block.overlaps(lb.block)) {
        throw SpectrumError("overlapping blocks requested on link " +
                            std::to_string(index(lb.link)));
      }
    }
  }
  for (const auto& lb : blocks) g.link(lb.link).bitmap.set_busy(lb.block);
}

void release(NetworkGraph& g, std::span<const LinkId> links, const SlotBlock& block) {
  std::vector<LinkBlock> blocks;
  blocks.reserve(links.size());
  for (auto l : links) blocks.push_back({l, block});
  release(g, blocks);
}

void release(NetworkGraph& g, std::span<const LinkBlock> blocks) {
  for (const auto& lb : blocks) {
    if (!g.link(lb.link).bitmap.all_busy(lb.block)) {
      throw SpectrumError("double free on link " + std::to_string(index(lb.link)));
    }
  }
  for (const auto& lb : blocks) g.link(lb.link).bitmap.set_free(lb.block);
}

}  // namespace avrsa
