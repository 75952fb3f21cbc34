#include "betaot/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "betaot/errors.hpp"

namespace betaot::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view field, double& out) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Matrix parse_table(std::istream& in, const std::string& source, std::size_t* width) {
  std::vector<double> values;
  std::size_t cols = 0, rows = 0, lineno = 0;
  bool have_width = false;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto fields = split(body, ',');
    double first;
    if (!have_width && rows == 0 && !parse_number(fields.front(), first)) {
      // Header row: fixes the width even if no data follows.
      cols = fields.size();
      have_width = true;
      continue;
    }
    if (have_width && fields.size() != cols) {
      std::ostringstream os;
      os << source << " line " << lineno << ": expected " << cols << " fields, found " << fields.size();
      throw InputError(os.str());
    }
    cols = fields.size();
    have_width = true;
    for (const auto f : fields) {
      double v;
      if (!parse_number(f, v)) {
        std::ostringstream os;
        os << source << " line " << lineno << ": '" << f << "' is not a number";
        throw InputError(os.str());
      }
      values.push_back(v);
    }
    ++rows;
  }
  if (width) *width = cols;
  Matrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.values().begin());
  return m;
}

PointCloud read_point_cloud(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::size_t width = 0;
  const Matrix t = parse_table(in, path.string(), &width);
  if (width == 0) throw InputError(path.string() + ": no columns");
  PointCloud pc(width);
  for (std::size_t i = 0; i < t.rows(); ++i) pc.push_back(t.row(i));
  return pc;
}

CostMatrix read_cost_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  Matrix t = parse_table(in, path.string());
  if (t.empty()) throw InputError(path.string() + ": empty cost matrix");
  return CostMatrix(std::move(t));
}

std::set<std::size_t> read_index_set(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::set<std::size_t> out;
  std::string tok;
  std::stringstream all;
  all << in.rdbuf();
  std::string text = all.str();
  for (char& c : text)
    if (c == ',') c = ' ';
  std::istringstream words(text);
  while (words >> tok) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw InputError(path.string() + ": '" + tok + "' is not an index");
    out.insert(v);
  }
  return out;
}

void write_point_cloud(const std::filesystem::path& path, const PointCloud& pc) {
  auto out = open_out(path);
  for (std::size_t k = 0; k < pc.dim(); ++k) out << (k ? "," : "") << 'x' << k;
  out << '\n';
  for (std::size_t i = 0; i < pc.size(); ++i) {
    const auto p = pc.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << format_double(p[k]);
    out << '\n';
  }
  if (!out) throw InputError("write failed: " + path.string());
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << format_double(r[j]);
    out << '\n';
  }
  if (!out) throw InputError("write failed: " + path.string());
}

void write_indices(const std::filesystem::path& path, std::span<const std::size_t> idx) {
  auto out = open_out(path);
  for (std::size_t v : idx) out << v << '\n';
  if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace betaot::io
