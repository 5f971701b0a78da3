#include "arms/shaping/pair_buffer.hpp"

#include <string>

#include "arms/core/errors.hpp"

namespace arms::shaping {

PairBuffer::PairBuffer(std::size_t capacity, std::size_t segment_length)
    : capacity_(capacity), length_(segment_length) {
  if (capacity == 0) throw InputError("pair buffer capacity must be positive");
  if (segment_length == 0) throw InputError("segment length must be positive");
  slots_.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

void PairBuffer::store(std::span<const TrajectorySegment> segments) {
  for (const auto& seg : segments) {
    if (seg.length() != length_ || seg.observations.size() != length_ * seg.obs_size) {
      throw InputError("segment has length " + std::to_string(seg.length()) +
                       ", buffer expects " + std::to_string(length_));
    }
  }
  for (const auto& seg : segments) {
    if (slots_.size() < capacity_) {
      slots_.push_back(seg);
    } else {
      slots_[head_] = seg;
    }
    head_ = (head_ + 1) % capacity_;
    size_ = std::min(size_ + 1, capacity_);
    ++inserted_;
  }
}

const TrajectorySegment& PairBuffer::at(std::size_t i) const {
  if (i >= size_) throw InputError("pair buffer index out of range");
  const std::size_t oldest = size_ < capacity_ ? 0 : head_;
  return slots_[(oldest + i) % capacity_];
}

std::vector<SegmentPair> sample_pairs(const PairBuffer& buffer, std::size_t k, Rng& rng) {
  std::vector<SegmentPair> pairs;
  if (k == 0) return pairs;
  const std::size_t n = buffer.size();
  if (n < 2) {
    throw SamplingError("cannot sample pairs from a buffer of " + std::to_string(n) +
                        " segment(s)");
  }
  pairs.reserve(k);
  for (std::size_t p = 0; p < k; ++p) {
    const std::size_t a = uniform_index(rng, n);
    std::size_t b = uniform_index(rng, n - 1);
    if (b >= a) ++b;
    pairs.push_back({a, b});
  }
  return pairs;
}

}  // namespace arms::shaping
