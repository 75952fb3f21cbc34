#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>

#include "betaot/cost_matrix.hpp"
#include "betaot/costs.hpp"
#include "betaot/matrix.hpp"

namespace betaot::io {

// CSV conventions: comma-separated decimals, one record per line, optional
// single header row (recognised by a non-numeric first field). Numbers are
// written with 17 significant digits so they round-trip and zero prints as 0.

/// Parses a dense rectangular numeric table. Throws InputError on ragged or
/// non-numeric content, with the offending line number.
Matrix parse_table(std::istream& in, const std::string& source, std::size_t* width = nullptr);

PointCloud read_point_cloud(const std::filesystem::path& path);
CostMatrix read_cost_matrix(const std::filesystem::path& path);
/// Indices separated by commas, whitespace or newlines.
std::set<std::size_t> read_index_set(const std::filesystem::path& path);

void write_point_cloud(const std::filesystem::path& path, const PointCloud& pc);
void write_matrix(const std::filesystem::path& path, const Matrix& m);
void write_indices(const std::filesystem::path& path, std::span<const std::size_t> idx);

/// %.17g, the shortest fixed rule that round-trips every double.
std::string format_double(double v);

}  // namespace betaot::io
