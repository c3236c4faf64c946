#ifndef CPCFIF_TOOLS_IO_HPP
#define CPCFIF_TOOLS_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpcfif/core.hpp"
#include "json.hpp"

namespace cpcfif::io {

/// Filesystem failures map to CLI exit code 4.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input CSV: header `x,y`, one point per row, LF or CRLF. Rows must be
/// pre-sorted; unsorted data is refused, not silently sorted.
DataSet read_csv(const std::filesystem::path& path);

struct Column {
  std::string name;
  const std::vector<double>* values;
};

void write_csv(const std::filesystem::path& path,
               const std::vector<Column>& columns);

void write_text(const std::filesystem::path& path, const std::string& text);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

struct Series {
  std::string label;
  std::string color;
  const std::vector<double>* y;
};

/// Minimal deterministic polyline plot.
std::string svg_plot(const std::string& title, const std::vector<double>& x,
                     const std::vector<Series>& series);

}  // namespace cpcfif::io

#endif
