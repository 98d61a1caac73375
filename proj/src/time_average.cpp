#include "qwalk/time_average.hpp"

namespace qwalk {

namespace {

constexpr std::size_t kPairwiseBlock = 64;

double pairwise(std::span<const double> values) {
  if (values.size() <= kPairwiseBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise(values.first(half)) + pairwise(values.subspan(half));
}

}  // namespace

std::string_view to_string(AverageKind kind) {
  switch (kind) {
    case AverageKind::kCtqwClosed: return "ctqw_closed";
    case AverageKind::kCtqwFiniteT: return "ctqw_finiteT";
    case AverageKind::kDtqwClosed: return "dtqw_closed";
    case AverageKind::kDtqwEmpirical: return "dtqw_empirical";
  }
  return "unknown";
}

double accurate_sum(std::span<const double> values) { return pairwise(values); }

}  // namespace qwalk
