#pragma once

#include <json.hpp>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qwalk/scaling.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/szegedy.hpp"

namespace qwalk::io {

/// Shortest decimal string that round-trips to the same double; '.' separator
/// regardless of locale. Non-finite values print as nan / inf / -inf.
std::string format_double(double x);

/// Minimal CSV table; cells are written verbatim, so callers format numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& out) const;
};

/// {"n", "eigenvalues": [...], "eigenvectors": [[v_0], [v_1], ...]}
nlohmann::json spectrum_to_json(const SpectralData& spec);

/// Lifted eigenpairs with complex entries as [re, im]; refuses n > 64.
nlohmann::json eigenpairs_to_json(std::span<const LiftedEigenpair> pairs, std::size_t n);

CsvTable report_to_csv(const ScalingReport& report);
nlohmann::json report_to_json(const ScalingReport& report);

}  // namespace qwalk::io
