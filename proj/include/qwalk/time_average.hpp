#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qwalk {

enum class AverageKind { kCtqwClosed, kCtqwFiniteT, kDtqwClosed, kDtqwEmpirical };

std::string_view to_string(AverageKind kind);

/// Time-averaged position distribution over vertices 0..n.
struct TimeAveragedDist {
  std::vector<double> probs;
  AverageKind kind = AverageKind::kCtqwClosed;
  std::optional<double> horizon;  // set iff the average is over a finite horizon
};

/// Sum with pairwise reduction once the input is long enough to matter.
double accurate_sum(std::span<const double> values);

}  // namespace qwalk
