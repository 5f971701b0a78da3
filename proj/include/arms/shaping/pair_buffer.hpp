#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arms/core/random.hpp"
#include "arms/shaping/segment.hpp"

namespace arms::shaping {

/// FIFO ring of trajectory segments. Segments from every agent share it.
class PairBuffer {
 public:
  PairBuffer(std::size_t capacity, std::size_t segment_length);

  /// Appends in order, evicting the oldest entries beyond capacity. Throws
  /// InputError (and stores nothing) if any segment has the wrong length.
  void store(std::span<const TrajectorySegment> segments);

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t segment_length() const { return length_; }
  std::uint64_t inserted() const { return inserted_; }
  bool empty() const { return size_ == 0; }

  /// i = 0 is the oldest stored segment.
  const TrajectorySegment& at(std::size_t i) const;

 private:
  std::size_t capacity_;
  std::size_t length_;
  std::vector<TrajectorySegment> slots_;
  std::size_t head_ = 0;  // next write slot
  std::size_t size_ = 0;
  std::uint64_t inserted_ = 0;
};

inline void store_segments(PairBuffer& buffer, std::span<const TrajectorySegment> segments) {
  buffer.store(segments);
}

/// Indices into the buffer (oldest-first), always distinct.
struct SegmentPair {
  std::size_t first = 0;
  std::size_t second = 0;
};

/// K pairs drawn uniformly with replacement across pairs. Throws
/// SamplingError when the buffer holds fewer than two segments and K > 0.
std::vector<SegmentPair> sample_pairs(const PairBuffer& buffer, std::size_t k, Rng& rng);

}  // namespace arms::shaping
