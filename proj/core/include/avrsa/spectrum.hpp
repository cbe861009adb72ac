#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avrsa/types.hpp"

namespace avrsa {

class NetworkGraph;

/// A contiguous run of spectrum slots, [start, start + len).
struct SlotBlock {
  std::size_t start = 0;
  std::size_t len = 0;

  std::size_t end() const { return start + len; }
  bool overlaps(const SlotBlock& o) const { return start < o.end() && o.start < end(); }
  friend bool operator==(const SlotBlock&, const SlotBlock&) = default;
};

/// Fixed-length slot occupancy map. A set bit means the slot is free.
///
/// Bits past size() are kept clear so that word-level operations never report
/// phantom free slots at the tail.
class SpectrumBitmap {
 public:
  SpectrumBitmap() = default;
  explicit SpectrumBitmap(std::size_t slots, bool all_free = true);

  /// Parses a string of '1' (free) and '0' (busy), index 0 first.
  static SpectrumBitmap from_string(std::string_view bits);
  std::string to_string() const;

  std::size_t size() const { return size_; }
  bool is_free(std::size_t slot) const;
  bool all_free(const SlotBlock& b) const;
  bool all_busy(const SlotBlock& b) const;
  std::size_t count_free() const;
  std::size_t count_busy() const { return size_ - count_free(); }
  std::size_t longest_free_run() const;

  void set_free(std::size_t slot);
  void set_busy(std::size_t slot);
  void set_free(const SlotBlock& b);
  void set_busy(const SlotBlock& b);

  /// Lowest-start run of `need` free slots, if any.
  std::optional<SlotBlock> lowest_fit(std::size_t need) const;

  SpectrumBitmap& operator&=(const SpectrumBitmap& other);
  friend bool operator==(const SpectrumBitmap&, const SpectrumBitmap&) = default;

 private:
  void check_block(const SlotBlock& b) const;
  void clear_tail();
  // Leaves bit i of `acc` set iff slots [i, i + need) are all free. `tmp` is
  // scratch space.
  void run_starts(std::size_t need, std::vector<std::uint64_t>& acc,
                  std::vector<std::uint64_t>& tmp) const;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Bitwise AND; models spectrum continuity along a path.
SpectrumBitmap intersect(const SpectrumBitmap& a, const SpectrumBitmap& b);

/// True iff `bitmap` has a run of at least `need` consecutive free slots.
bool is_feasible(const SpectrumBitmap& bitmap, std::size_t need);

/// Lowest-index block of exactly `need` free slots. Throws SpectrumError when
/// nothing fits.
SlotBlock first_fit(const SpectrumBitmap& bitmap, std::size_t need);

/// Slots for a demand: ceil(rate / slot) plus ceil(guard / slot) of guard band.
std::size_t demand_to_slots(double rate_gbps, double slot_ghz, double guard_ghz);

/// One link's share of a reservation.
struct LinkBlock {
  LinkId link;
  SlotBlock block;
};

/// Marks `block` busy on every link, or on none. Throws SpectrumError on a
/// conflict, leaving the graph untouched.
void allocate(NetworkGraph& g, std::span<const LinkId> links, const SlotBlock& block);
void allocate(NetworkGraph& g, std::span<const LinkBlock> blocks);

/// Frees `block` on every link, or on none. Throws SpectrumError if any slot
/// is already free (double free).
void release(NetworkGraph& g, std::span<const LinkId> links, const SlotBlock& block);
void release(NetworkGraph& g, std::span<const LinkBlock> blocks);

}  // namespace avrsa
