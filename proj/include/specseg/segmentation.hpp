#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace specseg {

// k contiguous segments over sentences 0..sentence_count-1. A boundary b
// means sentences <= b and > b fall in different segments.
struct Segmentation {
  std::vector<std::size_t> boundaries;  // strictly increasing, each <= sentence_count - 2
  std::size_t sentence_count = 0;

  std::size_t k() const { return boundaries.size() + 1; }

  // Inclusive [start, end] sentence ranges.
  std::vector<std::pair<std::size_t, std::size_t>> ranges() const;

  // Segment id per sentence.
  std::vector<std::size_t> labels() const;

  // Throws InvalidArgument unless the boundaries describe k non-empty,
  // ordered, covering segments.
  void validate() const;

  static Segmentation from_ranges(const std::vector<std::pair<std::size_t, std::size_t>>& ranges);

  bool operator==(const Segmentation&) const = default;
};

}  // namespace specseg
