#include "qwalk/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qwalk::io {

namespace {

constexpr std::size_t kMaxEigenpairDumpN = 64;

nlohmann::json complex_vector(const CoinState& v) {
  auto out = nlohmann::json::array();
  for (const auto& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("format_double: to_chars failed");
  return std::string(buf.data(), end);
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

nlohmann::json spectrum_to_json(const SpectralData& spec) {
  nlohmann::json j;
  j["n"] = spec.n();
  j["eigenvalues"] = std::vector<double>(spec.eigenvalues().begin(), spec.eigenvalues().end());
  auto vectors = nlohmann::json::array();
  for (std::size_t l = 0; l < spec.dim(); ++l) {
    const auto v = spec.eigenvector(l);
    vectors.push_back(std::vector<double>(v.begin(), v.end()));
  }
  j["eigenvectors"] = std::move(vectors);
  return j;
}

nlohmann::json eigenpairs_to_json(std::span<const LiftedEigenpair> pairs, std::size_t n) {
  if (n > kMaxEigenpairDumpN) {
    throw std::invalid_argument("eigenpair dumps are limited to n <= 64");
  }
  nlohmann::json j;
  j["n"] = n;
  j["layout"] = "2*j+coin, L=0, R=1";
  auto list = nlohmann::json::array();
  for (const auto& p : pairs) {
    list.push_back({{"level", p.level},
                    {"branch", p.branch},
                    {"mu", {p.mu.real(), p.mu.imag()}},
                    {"weight", p.weight},
                    {"u", complex_vector(p.u)}});
  }
  j["pairs"] = std::move(list);
  return j;
}

CsvTable report_to_csv(const ScalingReport& report) {
  CsvTable t;
  t.header = {"family", "n", "gap", "ks_cd", "ks_ref"};
  for (const auto& row : report.rows) {
    if (!row.ok) {
      t.rows.push_back({report.family, std::to_string(row.n), "nan", "nan", "nan"});
      continue;
    }
    t.rows.push_back({report.family, std::to_string(row.n), format_double(row.gap),
                      format_double(row.ks_cd), row.ks_ref ? format_double(*row.ks_ref) : ""});
  }
  return t;
}

nlohmann::json report_to_json(const ScalingReport& report) {
  nlohmann::json j;
  j["family"] = report.family;
  j["reference"] = report.reference_name.empty() ? nlohmann::json() : nlohmann::json(report.reference_name);
  auto rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r;
    r["n"] = row.n;
    r["status"] = row.ok ? "ok" : "failed";
    if (row.ok) {
      r["gap"] = row.gap;
      r["ks_cd"] = row.ks_cd;
      r["ks_ref"] = row.ks_ref ? nlohmann::json(*row.ks_ref) : nlohmann::json();
    } else {
      r["error"] = row.error;
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace qwalk::io
