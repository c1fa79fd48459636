#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stable/app.hpp"
#include "stable/error.hpp"

namespace stable {

namespace {

constexpr std::size_t kMinPrices = 21;

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  out.push_back(cell);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::vector<std::optional<double>> read_column(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "'" + path + "' has no header row");
  const std::vector<std::string> header = split_csv_line(line);
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == column) col = i;
  }
  if (col == header.size()) throw Error(ErrorCode::ColumnNotFound, "no column '" + column + "' in " + path);
  std::vector<std::optional<double>> out;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    out.push_back(col < cells.size() ? parse_number(cells[col]) : std::nullopt);
  }
  return out;
}

}  // namespace

ReturnSeries returns_from_prices(std::span<const std::optional<double>> prices, std::string source) {
  ReturnSeries r;
  r.source = std::move(source);
  std::optional<double> last;
  for (const auto& p : prices) {
    if (!p || !(*p > 0.0)) {
      ++r.n_dropped;
      continue;
    }
    if (last) r.values.push_back(std::log(*p / *last));
    last = *p;
  }
  return r;
}

ReturnSeries load_returns(const std::string& path, const std::string& price_column) {
  const auto prices = read_column(path, price_column);
  ReturnSeries r = returns_from_prices(prices, path + ":" + price_column);
  if (r.values.size() + 1 < kMinPrices) {
    std::ostringstream os;
    os << "need at least " << kMinPrices << " valid prices, got " << (r.values.empty() ? 0 : r.values.size() + 1);
    throw Error(ErrorCode::TooFewPrices, os.str());
  }
  return r;
}

ReturnSeries load_return_column(const std::string& path, const std::string& column) {
  const auto cells = read_column(path, column);
  ReturnSeries r;
  r.source = path + ":" + column;
  for (const auto& c : cells) {
    if (c) r.values.push_back(*c); else ++r.n_dropped;
  }
  if (r.values.size() < kMinPrices - 1) {
    throw Error(ErrorCode::SampleTooSmall, "too few valid returns in " + r.source);
  }
  return r;
}

}  // namespace stable
